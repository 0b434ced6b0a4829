#include "core/commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "core/coherent_orders.hpp"
#include "core/genericity.hpp"
#include "core/homgroup.hpp"
#include "core/nice_family.hpp"
#include "core/trace.hpp"

namespace permhom {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Ordinal o(std::uint64_t n) { return Ordinal(n); }

PointSet named_set(const std::string& name) {
  IntervalSet nat = IntervalSet::interval(o(0), Ordinal::omega());
  if (name == "all") return PointSet(nat);
  if (name == "evens")
    return PointSet(nat, [](const Ordinal& x) { return x.natural() % 2 == 0; }, "evens");
  if (name == "odds")
    return PointSet(nat, [](const Ordinal& x) { return x.natural() % 2 == 1; }, "odds");
  if (name.size() > 1 && name.back() == 'N') {
    std::uint64_t k = std::stoull(name.substr(0, name.size() - 1));
    return PointSet(nat, [k](const Ordinal& x) { return x.natural() % k == 0; }, name);
  }
  return PointSet(IntervalSet::parse(name));
}

Func swap_y() {
  auto f = [](const Ordinal& x) -> std::optional<Ordinal> {
    std::uint64_t n = x.natural();
    return o(n % 2 == 0 ? n + 1 : n - 1);
  };
  return {"y", f, f};
}

GraphPairs graph_pairs(const FiniteInjection& g) {
  GraphPairs out;
  for (const auto& [a, b] : g.pairs()) out.push_back({a.str(), b.str()});
  return out;
}

std::string need(const RunConfig& cfg, std::size_t i) {
  if (i >= cfg.args.size()) throw UsageError("missing argument for " + cfg.command);
  return cfg.args[i];
}

std::uint64_t need_u64(const RunConfig& cfg, std::size_t i) {
  try {
    return std::stoull(need(cfg, i));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("argument " + std::to_string(i) + " of " + cfg.command +
                     " is not a number");
  }
}

std::uint64_t opt_u64(const RunConfig& cfg, std::size_t i, std::uint64_t fallback) {
  return i < cfg.args.size() ? need_u64(cfg, i) : fallback;
}

int cmd_ordinal(const RunConfig& cfg, std::ostream& out) {
  std::string op = need(cfg, 0);
  Ordinal a = Ordinal::parse(need(cfg, 1));
  Json rec{{"type", "result"}, {"op", op}};
  if (op == "add")
    rec["value"] = ord_add(a, Ordinal::parse(need(cfg, 2))).str();
  else if (op == "sub")
    rec["value"] = ord_left_sub(a, Ordinal::parse(need(cfg, 2))).str();
  else if (op == "succ")
    rec["value"] = ord_succ(a).str();
  else if (op == "cmp") {
    Ordinal b = Ordinal::parse(need(cfg, 2));
    rec["value"] = a < b ? "lt" : (b < a ? "gt" : "eq");
  } else if (op == "parse")
    rec["value"] = a.str();
  else
    throw UsageError("unknown ordinal op " + op);
  write_record(out, rec);
  return kExitOk;
}

int cmd_family_check(const RunConfig& cfg, std::ostream& out) {
  std::string path = cfg.catalog_path.empty() ? need(cfg, 0) : cfg.catalog_path;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open family file " + path);
  std::stringstream text;
  text << in.rdbuf();
  NiceFamily fam = NiceFamily::from_json(text.str());
  FamilyReport rep = check_n2(fam);
  write_record(out, Json{{"type", "family-report"},
                         {"ok", rep.ok},
                         {"strong_ok", rep.strong_ok},
                         {"directed", rep.directed},
                         {"violations", rep.violations}});
  return rep.ok ? kExitOk : kExitPropertyFailure;
}

int cmd_orders_build(const RunConfig& cfg, std::ostream& out) {
  auto fam = clopen_family(static_cast<std::uint32_t>(need_u64(cfg, 0)),
                           static_cast<std::uint32_t>(need_u64(cfg, 1)));
  std::size_t b = need_u64(cfg, 2);
  std::size_t n = opt_u64(cfg, 3, 10);
  if (b >= fam.size()) throw UsageError("member index out of range");
  CoherentOrders co(fam);
  std::vector<std::string> elems;
  for (const Ordinal& x : co.order_prefix(b, n)) elems.push_back(x.str());
  write_record(out, Json{{"type", "order-prefix"},
                         {"member", fam.members[b].str()},
                         {"elements", elems}});
  return kExitOk;
}

int cmd_partition(const RunConfig& cfg, std::ostream& out) {
  auto fam = clopen_family(static_cast<std::uint32_t>(need_u64(cfg, 0)),
                           static_cast<std::uint32_t>(need_u64(cfg, 1)));
  std::size_t a = need_u64(cfg, 2), b = need_u64(cfg, 3);
  if (a >= fam.size() || b >= fam.size()) throw UsageError("member index out of range");
  CoherentOrders co(fam);
  std::vector<std::string> parts;
  for (const IntervalSet& p : co.partition_pair(a, b)) parts.push_back(p.str());
  write_record(out, Json{{"type", "partition"},
                         {"a", fam.members[a].str()},
                         {"b", fam.members[b].str()},
                         {"parts", parts}});
  return kExitOk;
}

int cmd_homog_map(const RunConfig& cfg, std::ostream& out) {
  PointSet x = named_set(need(cfg, 0)), y = named_set(need(cfg, 1));
  std::size_t n = opt_u64(cfg, 2, 20);
  HomogResult res = homog_map(x, y, natural_order(), Ordinal::parse(cfg.lambda));
  Json pairs = Json::array();
  bool onto_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.nth(i);
    auto yi = y.nth(i);
    if (!xi || !yi) break;
    Ordinal gx = res.g.apply(*xi);
    pairs.push_back(Json::array({xi->str(), gx.str()}));
    if (gx != *yi) onto_ok = false;  // rank-exactness: k-th of X to k-th of Y
  }
  write_record(out, Json{{"type", "homog-map"},
                         {"pieces", res.pieces.size()},
                         {"pairs", pairs},
                         {"rank_exact", onto_ok}});
  return onto_ok ? kExitOk : kExitPropertyFailure;
}

int cmd_witness_escape(const RunConfig& cfg, std::ostream& out) {
  std::uint64_t n_min = opt_u64(cfg, 0, 0);
  std::uint64_t m_max = opt_u64(cfg, 1, 16);
  WitnessY y = y_witness(named_set("evens"), natural_order());
  EscapePair esc = monotone_escape({}, y, n_min, m_max);
  bool fresh = *y.y.fwd(esc.b) == esc.yb && esc.b != esc.yb;
  write_record(out, Json{{"type", "escape"},
                         {"b", esc.b.str()},
                         {"yb", esc.yb.str()},
                         {"block", esc.block},
                         {"j", esc.j},
                         {"verified", fresh}});
  return fresh ? kExitOk : kExitPropertyFailure;
}

int cmd_extend_fuzz(const RunConfig& cfg, std::ostream& out) {
  std::uint64_t universe = opt_u64(cfg, 0, 5);
  std::uint64_t max_term = opt_u64(cfg, 1, 3);
  Atom X{Atom::Kind::X, ""}, Xi{Atom::Kind::XInv, ""};
  std::vector<std::set<Term>> hs{subterm_closure({Term{X}}), subterm_closure({Term{Xi}})};
  if (max_term >= 2) hs.push_back(subterm_closure({Term{X, X}}));
  if (max_term >= 3) {
    hs.push_back(subterm_closure({Term{X, Xi, X}}));
    hs.push_back(subterm_closure({Term{X, X, X}, Term{Xi, Xi}}));
  }
  std::vector<FiniteInjection> gs;
  gs.push_back({});
  for (std::uint64_t a = 0; a < universe; ++a)
    for (std::uint64_t b = 0; b < universe; ++b) {
      gs.push_back(FiniteInjection::from_pairs({{o(a), o(b)}}));
      for (std::uint64_t c = a; c < universe; ++c)
        for (std::uint64_t d = 0; d < universe; ++d) {
          if (c == a || d == b) continue;
          gs.push_back(FiniteInjection::from_pairs({{o(a), o(b)}, {o(c), o(d)}}));
        }
    }
  TermContext ctx;
  std::size_t checked = 0, bad = 0;
  for (const auto& g : gs)
    for (const auto& h : hs)
      for (std::uint64_t a = 0; a < universe; ++a)
        for (std::uint64_t as = 0; as < universe; ++as) {
          if (graph_member(o(a), o(as), h, g.as_func(), ctx)) continue;
          for (std::uint64_t z = 0; z < universe; ++z)
            for (bool dom_side : {true, false}) {
              if (dom_side ? g.in_dom(o(z)) : g.in_ran(o(z))) continue;
              ExtensionProblem p;
              p.h = h;
              p.g = g;
              p.alpha = o(a);
              p.alpha_star = o(as);
              p.candidates = PointSet(IntervalSet::interval(o(0), o(universe)));
              FiniteInjection g2;
              try {
                g2 = extend_step(p, dom_side, o(z));
              } catch (const BudgetExhausted&) {
                continue;
              }
              ++checked;
              if (graph_member(o(a), o(as), h, g2.as_func(), ctx)) ++bad;
            }
        }
  write_record(out, Json{{"type", "fuzz"},
                         {"universe", universe},
                         {"checked", checked},
                         {"counterexamples", bad}});
  return bad == 0 ? kExitOk : kExitPropertyFailure;
}

Engine::Config canonical_engine_config(std::uint64_t budget) {
  Engine::Config c;
  c.a = named_set("all");
  c.b = named_set("evens");
  c.c = named_set("odds");
  c.lambda = Ordinal::omega();
  c.y = swap_y();
  c.ydom = named_set("all");
  c.budget = budget;
  return c;
}

int cmd_engine_run(const RunConfig& cfg, std::ostream& out) {
  std::uint64_t n = opt_u64(cfg, 0, 10);
  auto e = std::make_shared<Engine>(canonical_engine_config(cfg.budget));
  std::set<Term> h = subterm_closure({Term{{Atom::Kind::X, ""}}});
  std::vector<Ordinal> ws = e->witnesses(h, 3);
  Json pairs = Json::array();
  for (std::uint64_t i = 0; i < n; ++i)
    pairs.push_back(Json::array({o(i).str(), e->query(o(i)).str()}));
  Func y = swap_y();
  std::vector<std::string> terms;
  for (const Term& t : h) terms.push_back(term_str(t));
  for (const Ordinal& w : ws)
    write_record(out, witness_record(terms, w.str(), y.fwd(w)->str(), graph_pairs(e->graph()),
                                     {}));
  write_record(out, Json{{"type", "engine"}, {"pairs", pairs}});
  return kExitOk;
}

struct Pipeline {
  PairCatalog cat{Ordinal::omega()};
  PointSet k = named_set("odds");
  Func y = swap_y();
  KeyLemmaResult built;
};

Pipeline build_pipeline(std::size_t n_pairs, std::size_t task_budget) {
  Pipeline pl;
  Ordinal w = Ordinal::omega();
  pl.cat.add(IntervalSet::interval(o(0), ord_add(w, w)), named_set("evens"), "p0");
  if (n_pairs > 1)
    pl.cat.add(IntervalSet::interval(o(0), ord_add(w, w)), named_set("3N"), "p1");
  pl.built = key_lemma_build(pl.cat, pl.k, pl.y, task_budget);
  return pl;
}

GraphMap registry_graphs(const KeyLemmaResult& built) {
  GraphMap reg;
  for (std::size_t i = 0; i < built.names.size(); ++i)
    reg[built.names[i]] = graph_pairs(built.engines[i]->graph());
  return reg;
}

int cmd_keylemma(const RunConfig& cfg, std::ostream& out) {
  std::size_t n_pairs = opt_u64(cfg, 0, 1);
  std::size_t task_budget = opt_u64(cfg, 1, 3);
  Pipeline pl = build_pipeline(n_pairs, task_budget);
  GraphMap reg = registry_graphs(pl.built);
  for (const auto& cert : pl.built.certs) {
    GraphPairs g = graph_pairs(pl.built.engines[cert.engine_index]->graph());
    write_record(out, witness_record(cert.terms, cert.alpha, cert.alpha_star, g, reg));
  }
  write_record(out, Json{{"type", "keylemma"},
                         {"names", pl.built.names},
                         {"certs", pl.built.certs.size()},
                         {"s_atoms", pl.built.s_atoms.size()}});
  return kExitOk;
}

int cmd_intransitive_cert(const RunConfig& cfg, std::ostream& out) {
  std::size_t n_pairs = cfg.args.size() > 1 ? 2 : 1;
  Pipeline pl = build_pipeline(n_pairs, 3);
  std::vector<std::pair<std::string, int>> word;
  if (cfg.args.empty())
    word.push_back({"f0", 1});
  else
    for (const auto& a : cfg.args) word.push_back({a, 1});
  IntransitiveCert cert = intransitive_cert(word, pl.built, pl.y, named_set("all"),
                                            Ordinal::omega(), o(0), cfg.budget);
  // independent re-check: no cover term maps alpha to alpha_star
  bool ok = cert.alpha != cert.alpha_star;
  for (const NTerm& t : cert.cover) {
    auto v = nterm_eval(t, pl.built.registry, cert.alpha);
    if (v && *v == cert.alpha_star) ok = false;
  }
  write_record(out, Json{{"type", "escape-cert"},
                         {"word", cfg.args.empty() ? std::vector<std::string>{"f0"} : cfg.args},
                         {"cover", cert.cover_text},
                         {"alpha", cert.alpha.str()},
                         {"alpha_star", cert.alpha_star.str()},
                         {"scanned", cert.scanned},
                         {"verified", ok}});
  return ok ? kExitOk : kExitPropertyFailure;
}

int cmd_generic_run(const RunConfig& cfg, std::ostream& out) {
  std::size_t n_rounds = opt_u64(cfg, 0, 1);
  std::size_t req_budget = opt_u64(cfg, 1, 4);
  std::vector<GenericRound> rounds;
  for (std::size_t i = 0; i < n_rounds; ++i) {
    if (i % 2 == 0)
      rounds.push_back({named_set("evens"), named_set("odds"), named_set("all")});
    else
      rounds.push_back({named_set("odds"), named_set("evens"), named_set("all")});
  }
  GenericResult res = generic_run(rounds, req_budget, Ordinal::omega(), cfg.budget);
  // r's graph, far enough for every record
  std::uint64_t hi = 0;
  for (const auto& rec : res.log) {
    Ordinal a = Ordinal::parse(rec.alpha);
    if (a.is_finite() && a.natural() > hi) hi = a.natural();
  }
  GraphPairs rp;
  for (std::uint64_t i = 0; i <= hi + 1; ++i) rp.push_back({o(i).str(), res.r.fwd(o(i))->str()});
  GraphMap reg;
  for (std::size_t i = 0; i < res.names.size(); ++i)
    reg[res.names[i]] = graph_pairs(res.engines[i]->graph());
  for (const auto& rec : res.log) write_record(out, requirement_record(rec, rp, reg));
  write_record(out, Json{{"type", "generic"},
                         {"names", res.names},
                         {"requirements", res.log.size()}});
  return kExitOk;
}

int cmd_verify_log(const RunConfig& cfg, std::ostream& out) {
  std::string path = cfg.args.empty() ? cfg.catalog_path : cfg.args[0];
  if (path.empty()) throw UsageError("verify-log needs a trace path");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open trace " + path);
  auto records = read_records(in);
  std::vector<std::string> failures;
  bool ok = verify_log(records, &failures);
  write_record(out, Json{{"type", "verify"},
                         {"records", records.size()},
                         {"ok", ok},
                         {"failures", failures}});
  return ok ? kExitOk : kExitPropertyFailure;
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "ordinal") return cmd_ordinal(cfg, out);
  if (cfg.command == "family-check") return cmd_family_check(cfg, out);
  if (cfg.command == "orders-build") return cmd_orders_build(cfg, out);
  if (cfg.command == "partition") return cmd_partition(cfg, out);
  if (cfg.command == "homog-map") return cmd_homog_map(cfg, out);
  if (cfg.command == "witness-escape") return cmd_witness_escape(cfg, out);
  if (cfg.command == "extend-fuzz") return cmd_extend_fuzz(cfg, out);
  if (cfg.command == "engine-run") return cmd_engine_run(cfg, out);
  if (cfg.command == "keylemma") return cmd_keylemma(cfg, out);
  if (cfg.command == "intransitive-cert") return cmd_intransitive_cert(cfg, out);
  if (cfg.command == "generic-run") return cmd_generic_run(cfg, out);
  if (cfg.command == "verify-log") return cmd_verify_log(cfg, out);
  throw UsageError("unknown command " + cfg.command);
}

}  // namespace

RunConfig config_from_kv(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "command")
      cfg.command = value;
    else if (key == "args") {
      std::istringstream vs(value);
      std::string a;
      while (vs >> a) cfg.args.push_back(a);
    } else if (key == "lambda")
      cfg.lambda = value;
    else if (key == "budget")
      cfg.budget = std::stoull(value);
    else if (key == "seed")
      cfg.seed = std::stoull(value);
    else if (key == "out")
      cfg.out_path = value;
    else if (key == "catalog")
      cfg.catalog_path = value;
    else
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key " +
                                  key);
  }
  return cfg;
}

int run_command(const RunConfig& cfg, std::ostream& out) {
  auto run = [&](std::ostream& os) -> int {
    try {
      if (cfg.budget == 0) throw UsageError("budget must be positive");
      Ordinal::parse(cfg.lambda);  // lambda must parse
      return dispatch(cfg, os);
    } catch (const UsageError& e) {
      write_record(os, Json{{"type", "error"}, {"message", e.what()}});
      return kExitUsage;
    } catch (const BudgetExhausted& e) {
      write_record(os, Json{{"type", "error"}, {"message", e.what()}});
      return kExitBudget;
    } catch (const std::exception& e) {
      write_record(os, Json{{"type", "error"}, {"message", e.what()}});
      return kExitUsage;
    }
  };
  if (cfg.out_path.empty()) return run(out);
  std::ostringstream buf;
  int code = run(buf);
  out << buf.str();
  std::ofstream file(cfg.out_path);
  file << buf.str();
  return code;
}

}  // namespace permhom
