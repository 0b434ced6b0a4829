#include "core/bfengine.hpp"

#include <algorithm>
#include <stdexcept>

namespace permhom {

namespace {

std::string ord_s(const Ordinal& o) { return o.str(); }

std::vector<std::pair<std::string, std::string>> graph_strings(const FiniteInjection& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [x, y] : g.pairs()) out.push_back({x.str(), y.str()});
  return out;
}

}  // namespace

FiniteInjection extend_step(const ExtensionProblem& prob, bool domain_side, const Ordinal& zeta,
                            std::size_t budget) {
  if (domain_side ? prob.g.in_dom(zeta) : prob.g.in_ran(zeta))
    throw std::invalid_argument("extend_step: zeta already covered");
  Func gf = prob.eval_func();
  std::set<Ordinal> avoid;
  for (const Term& t : prob.h) {
    if (auto v = term_eval(t, gf, prob.alpha, prob.ctx)) avoid.insert(*v);
    if (auto v = term_eval_inv(t, gf, prob.alpha_star, prob.ctx)) avoid.insert(*v);
  }
  for (std::size_t i = 0; i < budget; ++i) {
    auto eta = prob.candidates.nth(i);
    if (!eta) break;
    if (avoid.count(*eta)) continue;
    if (domain_side) {
      if (prob.g.in_ran(*eta)) continue;
      if (prob.allowed && !prob.allowed(zeta, *eta)) continue;
      FiniteInjection g2 = prob.g;
      g2.insert(zeta, *eta);
      return g2;
    }
    if (prob.g.in_dom(*eta)) continue;
    if (prob.allowed && !prob.allowed(*eta, zeta)) continue;
    FiniteInjection g2 = prob.g;
    g2.insert(*eta, zeta);
    return g2;
  }
  throw BudgetExhausted("extend_step: no allowed eta within budget");
}

FiniteInjection make_defined(const ExtensionProblem& prob, std::size_t budget) {
  ExtensionProblem cur = prob;
  for (std::size_t round = 0; round < budget; ++round) {
    bool extended = false, all_defined = true;
    for (const Term& t : cur.h) {
      Func gf = cur.eval_func();
      Ordinal v = cur.alpha;
      for (std::size_t i = t.size(); i-- > 0;) {
        const Atom& a = t[i];
        std::optional<Ordinal> next;
        switch (a.kind) {
          case Atom::Kind::Sym:
            next = cur.ctx.lookup(a.id).fwd(v);
            break;
          case Atom::Kind::SymInv:
            next = cur.ctx.lookup(a.id).bwd(v);
            break;
          case Atom::Kind::X:
            next = gf.fwd(v);
            if (!next) {
              cur.g = extend_step(cur, true, v, budget);
              extended = true;
            }
            break;
          case Atom::Kind::XInv:
            next = gf.bwd(v);
            if (!next) {
              cur.g = extend_step(cur, false, v, budget);
              extended = true;
            }
            break;
        }
        if (extended) break;
        if (!next) throw std::runtime_error("make_defined: a registered atom is undefined at " +
                                            v.str() + " in " + term_str(t));
        v = *next;
      }
      if (extended) {
        all_defined = false;
        break;
      }
    }
    if (all_defined) return cur.g;
  }
  throw BudgetExhausted("make_defined: extension budget exhausted");
}

Engine::Engine(Config cfg) : cfg_(std::move(cfg)) {}

ExtensionProblem Engine::problem_(const Ordinal& alpha, const Ordinal& alpha_star,
                                  const std::set<Term>& h) const {
  ExtensionProblem p;
  p.h = h;
  p.g = g_;
  p.alpha = alpha;
  p.alpha_star = alpha_star;
  p.ctx = cfg_.f;
  PointSet a = cfg_.a;
  Ordinal lambda = cfg_.lambda;
  p.as_g = [a, lambda](const FiniteInjection& g) {
    Func f;
    f.name = "g+id";
    f.fwd = [a, lambda, g](const Ordinal& x) -> std::optional<Ordinal> {
      if (a.contains(x)) return g.apply(x);
      if (x < lambda) return x;
      return std::nullopt;
    };
    f.bwd = [a, lambda, g](const Ordinal& x) -> std::optional<Ordinal> {
      if (a.contains(x)) return g.apply_inv(x);
      if (x < lambda) return x;
      return std::nullopt;
    };
    return f;
  };
  p.candidates = cfg_.a;
  PointSet b = cfg_.b, c = cfg_.c;
  p.allowed = [a, b, c](const Ordinal& u, const Ordinal& v) {
    if (!a.contains(u) || !a.contains(v)) return false;
    return b.contains(u) ? c.contains(v) : !c.contains(v);
  };
  return p;
}

void Engine::task0_(std::size_t item) {
  auto x = cfg_.a.nth(item / 2);
  if (!x) return;
  bool dom_side = item % 2 == 0;
  EngineEvent ev;
  ev.step = step_;
  ev.kind = dom_side ? "task0-dom" : "task0-ran";
  ev.point = ord_s(*x);
  if (dom_side ? !g_.in_dom(*x) : !g_.in_ran(*x))
    g_ = extend_step(problem_(Ordinal(0), Ordinal(0), {}), dom_side, *x, cfg_.budget);
  ev.g_pairs = graph_strings(g_);
  events_.push_back(std::move(ev));
}

void Engine::task1_(const std::set<Term>& h) {
  Func gf = problem_(Ordinal(0), Ordinal(0), {}).as_g(g_);
  for (std::size_t i = 0; i < cfg_.budget; ++i) {
    auto alpha = cfg_.ydom.nth(i);
    if (!alpha) break;
    if (used_witnesses_.count(*alpha)) continue;
    auto ya = cfg_.y.fwd(*alpha);
    if (!ya) continue;
    if (graph_member(*alpha, *ya, h, gf, cfg_.f)) continue;
    ExtensionProblem p = problem_(*alpha, *ya, h);
    g_ = make_defined(p, cfg_.budget);
    used_witnesses_.insert(*alpha);
    EngineEvent ev;
    ev.step = step_;
    ev.kind = "task1";
    for (const Term& t : h) ev.terms.push_back(term_str(t));
    ev.alpha = ord_s(*alpha);
    ev.alpha_star = ord_s(*ya);
    ev.g_pairs = graph_strings(g_);
    events_.push_back(std::move(ev));
    return;
  }
  throw BudgetExhausted("engine: no escaping witness within budget");
}

void Engine::run_step_() {
  if (step_ % 2 == 0) {
    task0_(task0_next_++);
  } else if (!task1_queue_.empty()) {
    std::set<Term> h = std::move(task1_queue_.front());
    task1_queue_.pop_front();
    task1_(h);
  }
  ++step_;
}

Ordinal Engine::query(const Ordinal& x) {
  if (!cfg_.a.contains(x)) {
    if (x < cfg_.lambda) return x;
    throw std::out_of_range("engine query beyond lambda");
  }
  std::size_t item = 2 * cfg_.a.index_of(x);
  std::size_t guard = 0;
  while (task0_next_ <= item) {
    if (++guard > cfg_.budget * 4) throw BudgetExhausted("engine query: step budget");
    run_step_();
  }
  return *g_.apply(x);
}

Ordinal Engine::query_inv(const Ordinal& x) {
  if (!cfg_.a.contains(x)) {
    if (x < cfg_.lambda) return x;
    throw std::out_of_range("engine query beyond lambda");
  }
  std::size_t item = 2 * cfg_.a.index_of(x) + 1;
  std::size_t guard = 0;
  while (task0_next_ <= item) {
    if (++guard > cfg_.budget * 4) throw BudgetExhausted("engine query: step budget");
    run_step_();
  }
  return *g_.apply_inv(x);
}

std::vector<Ordinal> Engine::witnesses(const std::set<Term>& h, std::size_t k) {
  std::set<Term> closed = subterm_closure(h);
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < k; ++i) {
    task1_queue_.push_back(closed);
    std::size_t guard = 0;
    while (!task1_queue_.empty()) {
      if (++guard > cfg_.budget * 4) throw BudgetExhausted("engine witnesses: step budget");
      run_step_();
    }
    out.push_back(Ordinal::parse(events_.back().alpha));
  }
  return out;
}

Func engine_func(std::shared_ptr<Engine> e, std::string name) {
  Func f;
  f.name = std::move(name);
  f.fwd = [e](const Ordinal& x) -> std::optional<Ordinal> {
    if (!e->config().a.contains(x)) return std::nullopt;
    return e->query(x);
  };
  f.bwd = [e](const Ordinal& x) -> std::optional<Ordinal> {
    if (!e->config().a.contains(x)) return std::nullopt;
    return e->query_inv(x);
  };
  return f;
}

ExtendedPerm engine_extended(std::shared_ptr<Engine> e, std::string name) {
  PointSet a = e->config().a;
  return extend_identity(engine_func(e, name), [a](const Ordinal& x) { return a.contains(x); },
                         e->config().lambda, std::move(name));
}

std::size_t PairCatalog::add(IntervalSet a, PointSet b, std::string name) {
  if (!IntervalSet::interval(Ordinal(0), kappa_).subset_of(a))
    throw std::invalid_argument("catalog pair: A must contain [0,kappa)");
  PointSet amb(a);
  std::size_t in_a = 0, outside_b = 0;
  for (std::size_t i = 0; i < 400 && (in_a < 30 || outside_b < 30); ++i) {
    auto x = b.nth(i, 1u << 16);
    if (x) {
      if (!a.contains(*x)) throw std::invalid_argument("catalog pair: B must sit inside A");
      ++in_a;
    }
    auto z = amb.nth(i);
    if (z && !b.contains(*z)) ++outside_b;
  }
  if (in_a < 30 || outside_b < 30)
    throw std::invalid_argument("catalog pair: B or A\\B not certified infinite");
  if (name.empty()) name = "pair" + std::to_string(pairs_.size());
  pairs_.push_back({std::move(a), std::move(b), std::move(name)});
  return pairs_.size() - 1;
}

std::size_t PairCatalog::admit(const PointSet& z) {
  IntervalSet kap = IntervalSet::interval(Ordinal(0), kappa_);
  std::size_t inside = 0, outside = 0;
  PointSet ks(kap);
  for (std::size_t i = 0; i < 400 && (inside < 30 || outside < 30); ++i) {
    auto p = ks.nth(i);
    if (!p) break;
    (z.contains(*p) ? inside : outside)++;
  }
  if (inside < 30 || outside < 30)
    throw std::invalid_argument("admit: Z not certified infinite and co-infinite in kappa");
  IntervalSet a = IntervalSet::interval(Ordinal(0), ord_add(kappa_, kappa_));
  return add(a, z, "admitted" + std::to_string(pairs_.size()));
}

std::vector<OrderIso> trace_isos(const std::vector<IntervalSet>& members, std::size_t max_atoms) {
  // the intersection closure of the ambient sets
  std::set<IntervalSet> pool(members.begin(), members.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IntervalSet> cur(pool.begin(), pool.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        IntervalSet t = iset_intersect(cur[i], cur[j]);
        if (!t.empty() && pool.insert(t).second) grew = true;
      }
  }
  std::vector<IntervalSet> itrace(pool.begin(), pool.end());
  std::sort(itrace.begin(), itrace.end(),
            [](const IntervalSet& a, const IntervalSet& b) { return a.str() < b.str(); });
  std::vector<OrderIso> out;
  for (std::size_t i = 0; i < itrace.size() && out.size() < max_atoms; ++i)
    for (std::size_t j = 0; j < itrace.size() && out.size() < max_atoms; ++j) {
      if (i == j) continue;
      if (itrace[i].order_type() != itrace[j].order_type()) continue;
      OrderIso rho(itrace[i], itrace[j]);
      bool matches = true;
      for (const IntervalSet& m : members)
        if (rho.image(m) != iset_intersect(m, itrace[j])) {
          matches = false;
          break;
        }
      if (matches) out.push_back(std::move(rho));
    }
  return out;
}

namespace {

/// Deterministic list of witness term sets over the symbols seen so far:
/// subterm closures of the length-<=2 words over x and the registry names.
std::vector<std::set<Term>> canonical_term_sets(const std::vector<std::string>& syms,
                                                std::size_t limit) {
  std::vector<Atom> atoms{{Atom::Kind::X, ""}, {Atom::Kind::XInv, ""}};
  for (const auto& s : syms) {
    atoms.push_back({Atom::Kind::Sym, s});
    atoms.push_back({Atom::Kind::SymInv, s});
  }
  std::vector<std::set<Term>> out;
  for (const Atom& a : atoms) {
    if (out.size() >= limit) return out;
    out.push_back(subterm_closure({Term{a}}));
  }
  for (const Atom& a : atoms)
    for (const Atom& b : atoms) {
      if (out.size() >= limit) return out;
      out.push_back(subterm_closure({Term{a, b}}));
    }
  return out;
}

Ordinal ambient_sup(const IntervalSet& s, const Ordinal& floor) {
  Ordinal m = floor;
  for (const auto& iv : s.intervals())
    if (m < iv.hi) m = iv.hi;
  return m;
}

/// Runs one catalog pair's engine and appends it to the result.
void build_one_pair(const CatalogPair& pair, const Ordinal& kappa, const PointSet& k,
                    const Func& y, std::size_t task_budget, KeyLemmaResult& res) {
  std::size_t idx = res.engines.size();
  Engine::Config cfg;
  cfg.a = PointSet(pair.a);
  cfg.b = pair.b;
  cfg.c = k;
  cfg.lambda = ambient_sup(pair.a, ord_add(kappa, kappa));
  cfg.f = res.registry;
  cfg.y = y;
  cfg.ydom = PointSet(IntervalSet::interval(Ordinal(0), kappa));
  auto engine = std::make_shared<Engine>(cfg);
  std::string name = "f" + std::to_string(idx);

  std::vector<std::string> syms;
  for (const auto& [id, fn] : res.registry.registry) syms.push_back(id);
  auto hs = canonical_term_sets(syms, task_budget);
  for (const auto& h : hs) {
    auto alphas = engine->witnesses(h, 1);
    WitnessCert cert;
    cert.engine_index = idx;
    for (const Term& t : subterm_closure(h)) cert.terms.push_back(term_str(t));
    cert.alpha = alphas[0].str();
    cert.alpha_star = y.fwd(alphas[0])->str();
    cert.g_pairs = graph_strings(engine->graph());
    res.certs.push_back(std::move(cert));
  }

  res.registry.registry[name] = engine_extended(engine, name).as_func(name);
  res.engines.push_back(engine);
  res.names.push_back(name);
  res.bases.push_back(pair.a);
}

}  // namespace

KeyLemmaResult key_lemma_build(const PairCatalog& catalog, const PointSet& k, const Func& y,
                               std::size_t task_budget) {
  KeyLemmaResult res;
  std::vector<IntervalSet> ambients;
  for (const auto& p : catalog.pairs()) ambients.push_back(p.a);
  res.s_atoms = trace_isos(ambients, 6);
  for (std::size_t i = 0; i < res.s_atoms.size(); ++i)
    res.registry.registry["s" + std::to_string(i)] =
        res.s_atoms[i].as_func("s" + std::to_string(i));
  for (const auto& pair : catalog.pairs())
    build_one_pair(pair, catalog.kappa(), k, y, task_budget, res);
  return res;
}

HomogWord homog_word(const PointSet& x, PairCatalog& catalog, KeyLemmaResult& built,
                     const PointSet& k, const Func& y, std::size_t task_budget) {
  // already one of the catalog B's? then a single factor suffices if that
  // pair's engine maps it onto K, i.e. X is itself some B
  auto same_on_prefix = [](const PointSet& u, const PointSet& v) {
    for (std::size_t i = 0; i < 40; ++i) {
      auto a = u.nth(i), b = v.nth(i);
      if (!a || !b) return bool(a) == bool(b);
      if (*a != *b) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < built.names.size() && i < catalog.pairs().size(); ++i)
    if (same_on_prefix(x, catalog.pairs()[i].b)) return {{built.names[i]}, i, i};

  // find a pair whose B contains X on the certified prefix
  std::size_t host = catalog.pairs().size();
  for (std::size_t i = 0; i < catalog.pairs().size(); ++i) {
    bool inside = true;
    for (std::size_t n = 0; n < 30 && inside; ++n) {
      auto p = x.nth(n);
      if (!p) break;
      inside = catalog.pairs()[i].b.contains(*p);
    }
    if (inside && i < built.engines.size()) {
      host = i;
      break;
    }
  }
  if (host == catalog.pairs().size())
    throw std::invalid_argument("homog_word: X not admitted by any catalog pair");

  // Z = f_host[X], a subset of K
  auto engine = built.engines[host];
  PointSet z(IntervalSet::interval(Ordinal(0), catalog.kappa()),
             [engine, k, x](const Ordinal& p) {
               if (!k.contains(p)) return false;
               return x.contains(engine->query_inv(p));
             },
             "image of " + x.desc());
  std::size_t zi = catalog.admit(z);
  build_one_pair(catalog.pairs()[zi], catalog.kappa(), k, y, task_budget, built);
  return {{built.names.back(), built.names[host]}, host, zi};
}

IntransitiveCert intransitive_cert(const std::vector<std::pair<std::string, int>>& word,
                                   const KeyLemmaResult& built, const Func& y,
                                   const PointSet& ydom, const Ordinal& kappa, const Ordinal& n,
                                   std::size_t budget) {
  auto base_of = [&](const std::string& id) -> const IntervalSet& {
    for (std::size_t i = 0; i < built.names.size(); ++i)
      if (built.names[i] == id) return built.bases[i];
    throw std::invalid_argument("intransitive_cert: unknown generator " + id);
  };
  std::set<Term> cover = subsequence_cover(word);
  IntransitiveCert cert;
  for (const Term& t : cover) {
    NTerm nt;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i > 0) {
        // identity iso between consecutive generator bases; the composition
        // law trims it to the two traces during normalization
        IntervalSet u = iset_union(base_of(t[i - 1].id), base_of(t[i].id));
        nt.push_back(RhoAtom{OrderIso(u, u)});
      }
      nt.push_back(FAtom{t[i].id, t[i].kind == Atom::Kind::SymInv, base_of(t[i].id)});
    }
    cert.cover.push_back(kappa_normalize(nt, kappa));
    cert.cover_text.push_back(nterm_str(cert.cover.back()));
  }
  for (std::size_t i = 0; i < budget; ++i) {
    auto alpha = ydom.nth(i);
    if (!alpha) break;
    if (*alpha < n) continue;
    auto ya = y.fwd(*alpha);
    if (!ya) continue;
    ++cert.scanned;
    bool covered = false;
    for (const NTerm& t : cert.cover)
      if (nterm_eval(t, built.registry, *alpha) == *ya) {
        covered = true;
        break;
      }
    if (!covered) {
      cert.alpha = *alpha;
      cert.alpha_star = *ya;
      return cert;
    }
  }
  throw BudgetExhausted("intransitive_cert: no escaping pair within budget");
}

}  // namespace permhom
