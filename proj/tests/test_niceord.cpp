#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/coherent_orders.hpp"
#include "core/nice_family.hpp"

using namespace permhom;

namespace {

Ordinal O(const std::string& s) { return Ordinal::parse(s); }
IntervalSet S(const std::string& s) { return IntervalSet::parse(s); }

NiceFamily three_member() {
  NiceFamily fam;
  fam.members = {S("[0,w)"), S("[w,w*2)"), S("[0,w*2)")};
  fam.I = {{}, {}, {0, 1}};
  fam.J[{0, 2}] = {0};
  fam.J[{1, 2}] = {1};
  fam.J[{0, 1}] = {};
  return fam;
}

}  // namespace

TEST_CASE("check_n2 passes the three-member family") {
  auto rep = check_n2(three_member());
  CHECK(rep.ok);
  CHECK(rep.violations.empty());
}

TEST_CASE("check_n2 flags an uncovered intersection") {
  NiceFamily fam;
  fam.members = {S("[0,w)"), S("[5,w*2)")};
  fam.I = {{}, {}};
  fam.J[{0, 1}] = {};
  auto rep = check_n2(fam);
  CHECK(!rep.ok);
  CHECK(!rep.violations.empty());
}

TEST_CASE("check_n2 single member passes vacuously") {
  NiceFamily fam;
  fam.members = {S("[0,w)")};
  fam.I = {{}};
  CHECK(check_n2(fam).ok);
}

TEST_CASE("family json round trip") {
  NiceFamily fam = three_member();
  fam.zeta[{0, 2}] = 0;
  NiceFamily back = NiceFamily::from_json(fam.to_json());
  CHECK(back.members == fam.members);
  CHECK(back.I == fam.I);
  CHECK(back.J == fam.J);
  CHECK(back.zeta == fam.zeta);
}

TEST_CASE("clopen_family: witnesses valid, strong form holds") {
  for (auto [k, depth] : {std::pair<std::uint32_t, std::uint32_t>{1, 2}, {2, 2}, {2, 3}}) {
    NiceFamily fam = clopen_family(k, depth);
    auto rep = check_n2(fam);
    CHECK(rep.ok);
    CHECK(rep.strong_ok);
    // intersection-closed: every pairwise intersection is a member or empty
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b) {
        IntervalSet t = iset_intersect(fam.members[a], fam.members[b]);
        if (t.empty()) continue;
        bool found = false;
        for (const auto& m : fam.members) found = found || m == t;
        CHECK(found);
      }
    // subsets precede supersets
    for (std::size_t a = 0; a < fam.size(); ++a)
      for (std::size_t b = a + 1; b < fam.size(); ++b)
        CHECK(!fam.members[b].subset_of(fam.members[a]));
  }
}

TEST_CASE("clopen_family small cases") {
  NiceFamily f0 = clopen_family(1, 0);
  CHECK(f0.size() == 1);
  NiceFamily f1 = clopen_family(1, 2);
  bool has_w = false, has_finite = false;
  for (const auto& m : f1.members) {
    if (m == S("[0,w)")) has_w = true;
    if (m.order_type().is_finite()) has_finite = true;
  }
  CHECK(has_w);
  CHECK(has_finite);
}

TEST_CASE("build_orders: dovetail trace of the three-member family") {
  CoherentOrders co(three_member());
  // frozen enumeration of member 2
  std::vector<Ordinal> expect = {O("0"), O("w"), O("1"), O("w+1"), O("2"), O("w+2")};
  CHECK(co.order_prefix(2, 6) == expect);
  CHECK(co.rank_of(2, O("w+1")) == 3);
  // base members enumerate in increasing order
  for (std::uint64_t r = 0; r < 20; ++r) {
    CHECK(co.element_of_rank(0, r) == Ordinal(r));
    CHECK(co.element_of_rank(1, r) == ord_add(Ordinal::omega(), Ordinal(r)));
  }
}

TEST_CASE("ranks are injective and hit every index") {
  CoherentOrders co(clopen_family(2, 2));
  for (std::size_t b = 0; b < co.family().size(); ++b) {
    Ordinal tp = co.family().members[b].order_type();
    std::size_t horizon = tp.is_finite() ? static_cast<std::size_t>(tp.natural()) : 60;
    auto pre = co.order_prefix(b, horizon);
    CHECK(pre.size() == horizon);
    std::set<Ordinal> seen(pre.begin(), pre.end());
    CHECK(seen.size() == pre.size());  // injective
    for (std::size_t r = 0; r < pre.size(); ++r) {
      CHECK(co.family().members[b].contains(pre[r]));
      CHECK(co.rank_of(b, pre[r]) == r);  // every index attained, mutually inverse
    }
  }
}

TEST_CASE("within a piece, rank order follows the witness member") {
  CoherentOrders co(clopen_family(2, 3));
  const NiceFamily& fam = co.family();
  for (std::size_t b = 0; b < fam.size(); ++b) {
    const auto& ps = co.pieces(b);
    for (std::size_t p = 0; p + 1 < ps.size(); ++p) {  // skip the leftover piece
      if (ps[p].empty()) continue;
      std::size_t z = fam.I[b][p];
      // collect the first elements of the piece in each of the two orders
      std::vector<Ordinal> via_b, via_z;
      for (std::size_t r = 0; via_b.size() < 40 && r < 4000; ++r) {
        Ordinal x = co.element_of_rank(b, r);
        if (ps[p].contains(x)) via_b.push_back(x);
        if (ps[p].order_type().is_finite() &&
            via_b.size() == ps[p].order_type().natural())
          break;
      }
      for (std::size_t r = 0; via_z.size() < via_b.size() && r < 100000; ++r) {
        Ordinal x = co.element_of_rank(z, r);
        if (ps[p].contains(x)) via_z.push_back(x);
      }
      REQUIRE(via_b.size() == via_z.size());
      CHECK(via_b == via_z);
    }
  }
}

TEST_CASE("partition_pair basics") {
  CoherentOrders co(three_member());
  auto self = co.partition_pair(0, 0);
  REQUIRE(self.size() == 1);
  CHECK(self[0] == S("[0,w)"));
  auto p02 = co.partition_pair(0, 2);
  REQUIRE(p02.size() == 1);
  CHECK(p02[0] == S("[0,w)"));
  CHECK(co.partition_pair(0, 1).empty());
}

TEST_CASE("partition_pair partitions exactly and orders agree per piece") {
  CoherentOrders co(clopen_family(2, 3));
  const NiceFamily& fam = co.family();
  REQUIRE(fam.size() <= 24);
  for (std::size_t a = 0; a < fam.size(); ++a)
    for (std::size_t b = 0; b < fam.size(); ++b) {
      auto parts = co.partition_pair(a, b);
      IntervalSet common = iset_intersect(fam.members[a], fam.members[b]);
      // exact partition
      IntervalSet uni;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        CHECK(!parts[i].empty());
        for (std::size_t j = i + 1; j < parts.size(); ++j)
          CHECK(iset_intersect(parts[i], parts[j]).empty());
        uni = iset_union(uni, parts[i]);
      }
      CHECK(uni == common);
      // order agreement on sampled pairs within each piece
      for (const auto& piece : parts) {
        PointSet ps(piece);
        std::vector<Ordinal> pts = ps.prefix(12, false);
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t j = i + 1; j < pts.size(); ++j) {
            bool lt_a = co.rank_of(a, pts[i]) < co.rank_of(a, pts[j]);
            bool lt_b = co.rank_of(b, pts[i]) < co.rank_of(b, pts[j]);
            CHECK(lt_a == lt_b);
          }
      }
    }
}
