#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "core/genericity.hpp"

using namespace permhom;

namespace {

Ordinal o(std::uint64_t n) { return Ordinal(n); }

PointSet nat_set() { return PointSet(IntervalSet::interval(o(0), Ordinal::omega())); }

PointSet evens() {
  return PointSet(IntervalSet::interval(o(0), Ordinal::omega()),
                  [](const Ordinal& x) { return x.natural() % 2 == 0; }, "evens");
}

PointSet odds() {
  return PointSet(IntervalSet::interval(o(0), Ordinal::omega()),
                  [](const Ordinal& x) { return x.natural() % 2 == 1; }, "odds");
}

Func swap_y() {
  auto f = [](const Ordinal& x) -> std::optional<Ordinal> {
    std::uint64_t n = x.natural();
    return o(n % 2 == 0 ? n + 1 : n - 1);
  };
  return {"y", f, f};
}

Condition empty_condition() { return {FiniteInjection{}, FiniteInjection{}, evens(), odds(), nat_set()}; }

}  // namespace

TEST_CASE("condition shape") {
  Condition c = empty_condition();
  CHECK(c.shape_ok());
  c.p0.insert(o(0), o(1));
  CHECK(c.shape_ok());
  CHECK(c.allows(o(2), o(3)));
  CHECK(!c.allows(o(2), o(4)));   // X point must land in Y
  CHECK(c.allows(o(1), o(4)));
  CHECK(!c.allows(o(1), o(3)));   // non-X point must avoid Y
  c.p1.insert(o(1), o(3));        // lands in Y: shape broken
  CHECK(!c.shape_ok());
}

TEST_CASE("density_step: empty H is trivial") {
  auto [q, alpha] = density_step({}, empty_condition(), 5, swap_y(), nat_set(), TermContext{});
  CHECK(alpha == o(5));
  CHECK(q.merged().size() == 0);
}

TEST_CASE("density_step: canonical example meets the requirement") {
  std::set<Term> h = subterm_closure({Term{{Atom::Kind::X, ""}}});
  Func r = swap_y();
  auto [q, alpha] = density_step(h, empty_condition(), 0, r, nat_set(), TermContext{});
  CHECK(q.shape_ok());
  Func qf = q.merged().as_func();
  TermContext ctx;
  Ordinal ra = *r.fwd(alpha);
  for (const Term& t : h) {
    auto v = term_eval(t, qf, alpha, ctx);
    REQUIRE(v);
    CHECK(*v != ra);
  }
}

TEST_CASE("density_step: small-grid audit keeps shape and avoidance") {
  const std::uint64_t u = 6;
  PointSet z(IntervalSet::interval(o(0), o(u)));
  std::vector<std::pair<std::set<std::uint64_t>, std::set<std::uint64_t>>> shapes{
      {{0, 2, 4}, {1, 3, 5}}, {{0, 1}, {2, 3}}, {{1, 4}, {0, 5}}};
  // r = the 6-cycle i -> i+1 mod 6
  std::vector<std::pair<Ordinal, Ordinal>> rp;
  for (std::uint64_t i = 0; i < u; ++i) rp.push_back({o(i), o((i + 1) % u)});
  Func r = FiniteInjection::from_pairs(rp).as_func("r");
  Atom X{Atom::Kind::X, ""}, Xi{Atom::Kind::XInv, ""};
  std::vector<std::set<Term>> hs{subterm_closure({Term{X}}), subterm_closure({Term{Xi}}),
                                 subterm_closure({Term{X, X}}),
                                 subterm_closure({Term{X, Xi, X}})};
  std::size_t met = 0;
  for (const auto& [xs, ys] : shapes) {
    auto xset = xs;
    auto yset = ys;
    PointSet x(IntervalSet::interval(o(0), o(u)),
               [xset](const Ordinal& v) { return xset.count(v.natural()) > 0; }, "x");
    PointSet y(IntervalSet::interval(o(0), o(u)),
               [yset](const Ordinal& v) { return yset.count(v.natural()) > 0; }, "y");
    for (const auto& h : hs)
      for (std::uint64_t m = 0; m < 4; ++m) {
        Condition p{FiniteInjection{}, FiniteInjection{}, x, y, z};
        DensityResult dr;
        try {
          dr = density_step(h, p, m, r, z, TermContext{});
        } catch (const BudgetExhausted&) {
          continue;  // tiny universes can make a requirement unmeetable
        }
        ++met;
        REQUIRE(dr.q.shape_ok());
        REQUIRE(!(dr.alpha < o(m)));
        Func qf = dr.q.merged().as_func();
        TermContext ctx;
        Ordinal ra = *r.fwd(dr.alpha);
        for (const Term& t : h) {
          auto v = term_eval(t, qf, dr.alpha, ctx);
          REQUIRE(v);
          REQUIRE(*v != ra);
        }
      }
  }
  CHECK(met > 20);
}

TEST_CASE("generic_run: zero rounds builds a fixed-point-free r") {
  auto res = generic_run({}, 6, Ordinal::omega());
  for (std::uint64_t n = 0; n < 6; ++n) {
    auto v = res.r.fwd(o(n));
    REQUIRE(v);
    CHECK(*v != o(n));
    CHECK(*res.r.bwd(*v) == o(n));
  }
  CHECK(res.log.size() == 6);
  CHECK(verify_requirements(res.log, res.registry, res.r));
}

TEST_CASE("generic_run: one round honors the X to Y split and the log verifies") {
  std::vector<GenericRound> rounds{{evens(), odds(), nat_set()}};
  auto res = generic_run(rounds, 4, Ordinal::omega());
  REQUIRE(res.names == std::vector<std::string>{"g0"});
  auto e = res.engines[0];
  for (std::uint64_t n = 0; n < 16; ++n) CHECK(odds().contains(e->query(o(n))) == (n % 2 == 0));
  CHECK(verify_requirements(res.log, res.registry, res.r));
  // every met requirement carries its floor
  bool saw_floor = false;
  for (const auto& rec : res.log)
    if (rec.round == 0 && rec.m > 0) saw_floor = true;
  CHECK(saw_floor);
}

TEST_CASE("generic_run: second round's requirements mention g0") {
  std::vector<GenericRound> rounds{{evens(), odds(), nat_set()}, {odds(), evens(), nat_set()}};
  auto res = generic_run(rounds, 6, Ordinal::omega());
  REQUIRE(res.names.size() == 2);
  bool mixed = false;
  for (const auto& rec : res.log)
    if (rec.round == 1)
      for (const auto& t : rec.terms)
        if (t.find("g0") != std::string::npos) mixed = true;
  CHECK(mixed);
  CHECK(verify_requirements(res.log, res.registry, res.r));
}

TEST_CASE("verify_requirements flags tampering") {
  auto res = generic_run({{evens(), odds(), nat_set()}}, 3, Ordinal::omega());
  REQUIRE(verify_requirements(res.log, res.registry, res.r));
  RequirementLog bad = res.log;
  bad.back().alpha_star = bad.back().alpha;  // claim a fixed point
  std::vector<std::string> why;
  CHECK(!verify_requirements(bad, res.registry, res.r, &why));
  CHECK(!why.empty());
}

namespace {

FiniteInjection swap_pair(std::uint64_t a, std::uint64_t b) {
  return FiniteInjection::from_pairs({{o(a), o(b)}, {o(b), o(a)}});
}

}  // namespace

TEST_CASE("word_restrict_small") {
  IntervalSet a = IntervalSet::interval(o(0), o(6));
  // two swaps with supports inside A: h = their composition on A
  FiniteInjection h = word_restrict_small({swap_pair(0, 1), swap_pair(1, 2)}, a);
  CHECK(*h.apply(o(2)) == o(0));  // right factor first: 2 -> 1 -> 0
  CHECK(*h.apply(o(1)) == o(2));
  CHECK(*h.apply(o(0)) == o(1));
  CHECK(*h.apply(o(3)) == o(3));
  // supports disjoint from A: the identity fragment
  FiniteInjection id = word_restrict_small({swap_pair(10, 11)}, a);
  for (std::uint64_t n = 0; n < 6; ++n) CHECK(*id.apply(o(n)) == o(n));
  // the word's graph restricted to A x A is contained even when images leave A
  FiniteInjection part = word_restrict_small({swap_pair(5, 9)}, a);
  CHECK(!part.in_dom(o(5)));  // 5 maps out of A, so no constraint
  CHECK(*part.apply(o(0)) == o(0));
}

TEST_CASE("word_push_down") {
  auto res0 = generic_run({{evens(), odds(), nat_set()}}, 2, Ordinal::omega());
  IntervalSet a = IntervalSet::interval(o(0), o(10));

  SUBCASE("single registered generator is unchanged") {
    std::vector<MixedFactor> w{{false, "g0", {}}};
    auto pd = word_push_down(w, a, res0.registry);
    REQUIRE(pd.word.size() == 1);
    CHECK(!pd.word[0].is_small);
    for (const Ordinal& p : {o(0), o(3), o(8)})
      CHECK(mixed_word_apply(pd.word, res0.registry, p) ==
            mixed_word_apply(w, res0.registry, p));
  }

  SUBCASE("g after a swap: containment on all of a 10-point A") {
    std::vector<MixedFactor> w{{false, "g0", {}}, {true, "", swap_pair(1, 20)}};
    auto pd = word_push_down(w, a, res0.registry);
    REQUIRE(pd.word.size() == 2);
    CHECK(pd.word[1].is_small);
    for (std::uint64_t n = 0; n < 10; ++n)
      CHECK(mixed_word_apply(pd.word, res0.registry, o(n)) ==
            mixed_word_apply(w, res0.registry, o(n)));
    CHECK(pd.a_chain.size() == 3);
    CHECK(pd.a_chain.back() == a);
  }

  SUBCASE("empty word is the identity") {
    auto pd = word_push_down({}, a, res0.registry);
    CHECK(pd.word.empty());
    REQUIRE(pd.a_chain.size() == 1);
    for (std::uint64_t n = 0; n < 10; ++n)
      CHECK(mixed_word_apply(pd.word, res0.registry, o(n)) == o(n));
  }
}
