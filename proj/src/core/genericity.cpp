#include "core/genericity.hpp"

#include <algorithm>
#include <stdexcept>

namespace permhom {

namespace {

std::vector<std::pair<std::string, std::string>> graph_strings(const FiniteInjection& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [x, y] : g.pairs()) out.push_back({x.str(), y.str()});
  return out;
}

std::vector<Ordinal> finite_points(const IntervalSet& a) {
  if (!a.order_type().is_finite())
    throw std::invalid_argument("a finite interval set is required here");
  std::vector<Ordinal> out;
  std::uint64_t n = a.order_type().is_zero() ? 0 : a.order_type().natural();
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(a.element_at(Ordinal(i)));
  return out;
}

IntervalSet points_to_set(const std::vector<Ordinal>& pts) {
  IntervalSet s;
  for (const auto& p : pts) s = iset_union(s, IntervalSet::singleton(p));
  return s;
}

/// Completes a finite partial injection to a finite permutation of the points
/// it touches (|U \ dom| = |U \ ran| always, so no fresh points are needed).
FiniteInjection complete_to_perm(FiniteInjection g) {
  std::set<Ordinal> universe;
  for (const auto& [a, b] : g.pairs()) {
    universe.insert(a);
    universe.insert(b);
  }
  for (const Ordinal& u : universe) {
    if (g.in_dom(u)) continue;
    for (const Ordinal& v : universe) {
      if (g.in_ran(v)) continue;
      g.insert(u, v);
      break;
    }
  }
  return g;
}

}  // namespace

bool Condition::shape_ok() const {
  for (const auto& [a, b] : p0.pairs())
    if (!x.contains(a) || !y.contains(b) || !z.contains(a) || !z.contains(b)) return false;
  for (const auto& [a, b] : p1.pairs()) {
    if (!z.contains(a) || !z.contains(b)) return false;
    if (x.contains(a) || y.contains(b)) return false;
  }
  try {
    merged();
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

FiniteInjection Condition::merged() const {
  FiniteInjection g = p0;
  for (const auto& [a, b] : p1.pairs()) g.insert(a, b);
  return g;
}

bool Condition::allows(const Ordinal& zeta, const Ordinal& eta) const {
  if (!z.contains(zeta) || !z.contains(eta)) return false;
  return x.contains(zeta) ? y.contains(eta) : !y.contains(eta);
}

DensityResult density_step(const std::set<Term>& h, const Condition& p, std::uint64_t m,
                           const Func& r, const PointSet& rdom, const TermContext& ctx,
                           std::size_t budget) {
  if (!p.shape_ok()) throw std::invalid_argument("density_step: condition shape violated");
  if (h.empty()) return {p, Ordinal(m)};
  Func pf = p.merged().as_func();
  for (std::size_t i = 0; i < budget; ++i) {
    auto alpha = rdom.nth(i);
    if (!alpha) break;
    if (*alpha < Ordinal(m)) continue;
    auto ra = r.fwd(*alpha);
    if (!ra) continue;
    if (graph_member(*alpha, *ra, h, pf, ctx)) continue;
    ExtensionProblem prob;
    prob.h = h;
    prob.g = p.merged();
    prob.alpha = *alpha;
    prob.alpha_star = *ra;
    prob.ctx = ctx;
    prob.candidates = p.z;
    Condition shape = p;
    prob.allowed = [shape](const Ordinal& u, const Ordinal& v) { return shape.allows(u, v); };
    FiniteInjection g2 = make_defined(prob, budget);
    Condition q = p;
    for (const auto& [a, b] : g2.pairs()) {
      if (p.p0.in_dom(a) || p.p1.in_dom(a)) continue;
      (p.x.contains(a) ? q.p0 : q.p1).insert(a, b);
    }
    return {q, *alpha};
  }
  throw BudgetExhausted("density_step: no witness within budget");
}

bool verify_requirements(const RequirementLog& log, const TermContext& registry, const Func& r,
                         std::vector<std::string>* failures) {
  bool ok = true;
  auto fail = [&](const std::string& msg) {
    ok = false;
    if (failures) failures->push_back(msg);
  };
  for (std::size_t i = 0; i < log.size(); ++i) {
    const RequirementRecord& rec = log[i];
    std::string tag = "record " + std::to_string(i) + ": ";
    Ordinal alpha = Ordinal::parse(rec.alpha), alpha_star = Ordinal::parse(rec.alpha_star);
    if (alpha < Ordinal(rec.m)) fail(tag + "witness below the floor");
    auto ra = r.fwd(alpha);
    if (!ra || *ra != alpha_star) fail(tag + "alpha_star is not r(alpha)");
    std::vector<std::pair<Ordinal, Ordinal>> ps;
    for (const auto& [a, b] : rec.g_pairs) ps.push_back({Ordinal::parse(a), Ordinal::parse(b)});
    Func gf = FiniteInjection::from_pairs(ps).as_func();
    for (const auto& ts : rec.terms) {
      auto v = term_eval(term_parse(ts), gf, alpha, registry);
      if (!v) fail(tag + "term " + ts + " undefined at the witness");
      else if (*v == alpha_star) fail(tag + "term " + ts + " hits r(alpha)");
    }
  }
  return ok;
}

namespace {

/// The base function r, grown on demand by the canonical fixed-point-free
/// schedule: each n enters dom and ran with the least fresh partner != n.
struct RState {
  FiniteInjection g;
  std::uint64_t covered = 0;

  void ensure(std::uint64_t n) {
    for (; covered <= n; ++covered) {
      Ordinal p(covered);
      if (!g.in_dom(p))
        for (std::uint64_t e = 0;; ++e) {
          if (e == covered || g.in_ran(Ordinal(e))) continue;
          g.insert(p, Ordinal(e));
          break;
        }
      if (!g.in_ran(p))
        for (std::uint64_t e = 0;; ++e) {
          if (e == covered || g.in_dom(Ordinal(e))) continue;
          g.insert(Ordinal(e), p);
          break;
        }
    }
  }
};

std::vector<std::set<Term>> round_term_sets(const std::vector<std::string>& syms,
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

}  // namespace

GenericResult generic_run(const std::vector<GenericRound>& rounds, std::size_t req_budget,
                          const Ordinal& lambda, std::size_t budget) {
  GenericResult res;
  auto rs = std::make_shared<RState>();
  res.r = {"r",
           [rs](const Ordinal& v) -> std::optional<Ordinal> {
             if (!v.is_finite()) return std::nullopt;
             rs->ensure(v.natural());
             return rs->g.apply(v);
           },
           [rs](const Ordinal& v) -> std::optional<Ordinal> {
             if (!v.is_finite()) return std::nullopt;
             rs->ensure(v.natural());
             return rs->g.apply_inv(v);
           }};

  // base phase: r meets the scheduled no-fixed-point requirements
  for (std::uint64_t i = 0; i < req_budget; ++i) {
    rs->ensure(i);
    RequirementRecord rec;
    rec.round = SIZE_MAX;
    rec.terms = {"e"};
    rec.m = i;
    rec.alpha = Ordinal(i).str();
    rec.alpha_star = rs->g.apply(Ordinal(i))->str();
    rec.g_pairs = graph_strings(rs->g);
    res.log.push_back(std::move(rec));
  }

  for (std::size_t nu = 0; nu < rounds.size(); ++nu) {
    Engine::Config cfg;
    cfg.a = rounds[nu].z;
    cfg.b = rounds[nu].x;
    cfg.c = rounds[nu].y;
    cfg.lambda = lambda;
    cfg.f = res.registry;
    cfg.y = res.r;
    cfg.ydom = rounds[nu].z;
    cfg.budget = budget;
    auto e = std::make_shared<Engine>(cfg);

    auto hs = round_term_sets(res.names, std::max<std::size_t>(req_budget, 1));
    std::size_t served = 0;
    for (std::uint64_t diag = 0; served < req_budget; ++diag)
      for (std::uint64_t c = 0; c <= diag && served < req_budget; ++c) {
        if (c >= hs.size()) continue;
        std::uint64_t m = diag - c;
        Ordinal w;
        std::size_t guard = 0;
        do {
          w = e->witnesses(hs[c], 1)[0];
          if (++guard > budget) throw BudgetExhausted("generic_run: witness floor not reached");
        } while (w < Ordinal(m));
        RequirementRecord rec;
        rec.round = nu;
        rec.m = m;
        for (const Term& t : subterm_closure(hs[c])) rec.terms.push_back(term_str(t));
        rec.alpha = w.str();
        rec.alpha_star = res.r.fwd(w)->str();
        rec.g_pairs = graph_strings(e->graph());
        res.log.push_back(std::move(rec));
        ++served;
      }

    std::string name = "g" + std::to_string(nu);
    res.registry.registry[name] = engine_extended(e, name).as_func(name);
    res.engines.push_back(std::move(e));
    res.names.push_back(std::move(name));
  }
  return res;
}

Ordinal mixed_apply(const MixedFactor& f, const TermContext& ctx, const Ordinal& v) {
  if (f.is_small) {
    auto w = f.h.apply(v);
    return w ? *w : v;
  }
  auto w = ctx.lookup(f.name).fwd(v);
  if (!w) throw std::runtime_error("mixed factor " + f.name + " undefined at " + v.str());
  return *w;
}

Ordinal mixed_word_apply(const std::vector<MixedFactor>& word, const TermContext& ctx,
                         const Ordinal& v) {
  Ordinal cur = v;
  for (std::size_t i = word.size(); i-- > 0;) cur = mixed_apply(word[i], ctx, cur);
  return cur;
}

FiniteInjection word_restrict_small(const std::vector<FiniteInjection>& word,
                                    const IntervalSet& a) {
  FiniteInjection h;
  for (const Ordinal& p : finite_points(a)) {
    Ordinal cur = p;
    for (std::size_t i = word.size(); i-- > 0;) {
      auto w = word[i].apply(cur);
      if (w) cur = *w;
    }
    if (a.contains(cur)) h.insert(p, cur);
  }
  return complete_to_perm(std::move(h));
}

PushDownResult word_push_down(const std::vector<MixedFactor>& word, const IntervalSet& a,
                              const TermContext& ctx) {
  PushDownResult res;
  res.word = word;
  std::vector<Ordinal> cur = finite_points(a);
  res.a_chain.push_back(a);
  for (std::size_t i = word.size(); i-- > 0;) {
    if (res.word[i].is_small) {
      // shrink the small factor to its action on the current chain set
      FiniteInjection shrunk;
      for (const Ordinal& p : cur)
        if (auto w = res.word[i].h.apply(p)) shrunk.insert(p, *w);
      res.word[i].h = complete_to_perm(std::move(shrunk));
    }
    std::vector<Ordinal> next;
    for (const Ordinal& p : cur) next.push_back(mixed_apply(res.word[i], ctx, p));
    std::sort(next.begin(), next.end());
    cur = std::move(next);
    res.a_chain.push_back(points_to_set(cur));
  }
  std::reverse(res.a_chain.begin(), res.a_chain.end());
  return res;
}

}  // namespace permhom
