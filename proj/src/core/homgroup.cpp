#include "core/homgroup.hpp"

#include <map>
#include <stdexcept>

namespace permhom {

namespace {

constexpr std::uint64_t kScanCap = 1u << 20;

/// Elements of a filtered subset in the rank order of the ambient set,
/// grown on demand and shared by the closures of one match.
struct RankedSubset {
  PointSet set;
  RankOrder ord;
  std::vector<Ordinal> elems;
  std::map<Ordinal, std::uint64_t> index;
  std::uint64_t next_rank = 0;

  RankedSubset(PointSet s, RankOrder o) : set(std::move(s)), ord(std::move(o)) {}

  bool grow() {
    if (next_rank > kScanCap) throw std::runtime_error("rank scan budget exhausted");
    Ordinal e = ord.element(next_rank++);
    if (!set.contains(e)) return false;
    index[e] = elems.size();
    elems.push_back(e);
    return true;
  }
  std::optional<Ordinal> nth(std::uint64_t n) {
    while (elems.size() <= n) grow();
    return elems[n];
  }
  std::optional<std::uint64_t> index_of(const Ordinal& x) {
    if (!set.contains(x)) return std::nullopt;
    std::uint64_t r = ord.rank(x);
    while (next_rank <= r) grow();
    auto it = index.find(x);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace

RankOrder natural_order() {
  RankOrder o;
  o.set = PointSet(IntervalSet::interval(Ordinal(0), Ordinal::omega()));
  o.element = [](std::uint64_t r) { return Ordinal(r); };
  o.rank = [](const Ordinal& x) { return x.natural(); };
  o.name = "nat";
  return o;
}

RankOrder member_order(std::shared_ptr<CoherentOrders> co, std::size_t b) {
  RankOrder o;
  o.set = PointSet(co->family().members[b]);
  o.element = [co, b](std::uint64_t r) { return co->element_of_rank(b, r); };
  o.rank = [co, b](const Ordinal& x) { return co->rank_of(b, x); };
  o.name = "member" + std::to_string(b);
  return o;
}

Func monotone_match(const PointSet& x, const PointSet& y, const RankOrder& order,
                    std::string name) {
  auto xs = std::make_shared<RankedSubset>(x, order);
  auto ys = std::make_shared<RankedSubset>(y, order);
  Func f;
  f.name = std::move(name);
  f.fwd = [xs, ys](const Ordinal& p) -> std::optional<Ordinal> {
    auto i = xs->index_of(p);
    if (!i) return std::nullopt;
    return ys->nth(*i);
  };
  f.bwd = [xs, ys](const Ordinal& q) -> std::optional<Ordinal> {
    auto i = ys->index_of(q);
    if (!i) return std::nullopt;
    return xs->nth(*i);
  };
  return f;
}

HomogResult homog_map(const PointSet& x, const PointSet& y, const RankOrder& order,
                      const Ordinal& lambda) {
  PointSet a = order.set;
  PointSet xc(a.carrier(), [a, x](const Ordinal& p) { return a.contains(p) && !x.contains(p); },
              "co-" + x.desc());
  PointSet yc(a.carrier(), [a, y](const Ordinal& p) { return a.contains(p) && !y.contains(p); },
              "co-" + y.desc());
  Func c = monotone_match(x, y, order, "c");
  Func d = monotone_match(xc, yc, order, "d");
  Func base;
  base.name = "homog";
  base.fwd = [x, c, d, a](const Ordinal& p) -> std::optional<Ordinal> {
    if (!a.contains(p)) return std::nullopt;
    return x.contains(p) ? c.fwd(p) : d.fwd(p);
  };
  base.bwd = [y, c, d, a](const Ordinal& q) -> std::optional<Ordinal> {
    if (!a.contains(q)) return std::nullopt;
    return y.contains(q) ? c.bwd(q) : d.bwd(q);
  };
  HomogResult res{extend_identity(base, [a](const Ordinal& p) { return a.contains(p); }, lambda,
                                  "homog on " + a.desc()),
                  {}};
  res.pieces.push_back({x, true, c, 0});
  res.pieces.push_back({xc, true, d, 0});
  return res;
}

std::uint64_t WitnessY::block_image(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("block_image: subscript 0 has no image");
  std::uint64_t i = 0;
  while ((2ull << i) <= k) ++i;  // 2^i <= k < 2^{i+1}
  std::uint64_t j = k - (1ull << i);
  return (2ull << i) - j;
}

WitnessY y_witness(const PointSet& b, const RankOrder& order) {
  auto bs = std::make_shared<RankedSubset>(b, order);
  WitnessY w;
  w.order = order;
  w.base = b;
  w.b = [bs](std::uint64_t k) {
    auto e = bs->nth(k);
    return *e;
  };
  w.y.name = "y";
  w.y.fwd = [bs](const Ordinal& p) -> std::optional<Ordinal> {
    auto k = bs->index_of(p);
    if (!k || *k == 0) return std::nullopt;
    return bs->nth(WitnessY::block_image(*k));
  };
  w.y.bwd = [bs](const Ordinal& q) -> std::optional<Ordinal> {
    auto m = bs->index_of(q);
    if (!m || *m < 2) return std::nullopt;
    std::uint64_t i = 0;
    while ((2ull << i) < *m) ++i;  // 2^i < m <= 2^{i+1}
    std::uint64_t j = (2ull << i) - *m;
    return bs->nth((1ull << i) + j);
  };
  return w;
}

std::vector<std::uint64_t> block_agreements(const Func& c, const WitnessY& y, std::size_t m) {
  std::vector<std::uint64_t> counts;
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t a = 0;
    for (std::uint64_t j = 0; j < (1ull << i); ++j) {
      Ordinal p = y.b((1ull << i) + j);
      auto img = c.fwd(p);
      auto want = y.y.fwd(p);
      if (img && want && *img == *want) ++a;
    }
    counts.push_back(a);
  }
  return counts;
}

EscapePair monotone_escape(const std::vector<Func>& h, const WitnessY& y, std::uint64_t n_min,
                           std::uint64_t m_max) {
  std::uint64_t n = h.size();
  for (std::uint64_t i = 0; i < m_max; ++i) {
    if ((1ull << i) <= n) continue;
    if ((2ull << i) <= n_min) continue;  // the whole block sits below the threshold
    bool skip = false;
    for (const Func& c : h) {
      std::uint64_t a = 0;
      for (std::uint64_t j = 0; j < (1ull << i) && a < 2; ++j) {
        Ordinal p = y.b((1ull << i) + j);
        auto img = c.fwd(p);
        auto want = y.y.fwd(p);
        if (img && want && *img == *want) ++a;
      }
      if (a >= 2) {
        skip = true;
        break;
      }
    }
    if (skip) continue;
    for (std::uint64_t j = 0; j < (1ull << i); ++j) {
      std::uint64_t k = (1ull << i) + j;
      if (k < n_min) continue;
      Ordinal p = y.b(k);
      Ordinal q = *y.y.fwd(p);
      bool covered = false;
      for (const Func& c : h) {
        auto img = c.fwd(p);
        if (img && *img == q) {
          covered = true;
          break;
        }
      }
      if (!covered) return {p, q, i, j};
    }
  }
  throw std::runtime_error("monotone_escape: block budget exhausted");
}

namespace {

/// Pipeline state: domain tests the word's starting point x (always compared
/// in the target order), map is the composite so far, and member names the
/// order its image is currently monotone in.
PointSet and_image_in(const PointSet& dom, const Func& map, const IntervalSet& box,
                      const PointSet& extra) {
  return PointSet(dom.carrier(),
                  [dom, map, box, extra](const Ordinal& x) {
                    if (!dom.contains(x)) return false;
                    auto mid = map.fwd(x);
                    return mid && box.contains(*mid) && extra.contains(*mid);
                  },
                  dom.desc() + "+img");
}

}  // namespace

std::vector<MonotonePiece> word_monotone_decompose(
    const std::vector<std::vector<MonotonePiece>>& factors, std::size_t target,
    CoherentOrders& co) {
  const IntervalSet& at = co.family().members[target];
  std::vector<MonotonePiece> cur{{PointSet(at), true, func_identity(), target, true}};
  for (const auto& factor : factors) {
    std::vector<MonotonePiece> next;
    for (const MonotonePiece& p : cur)
      for (const MonotonePiece& q : factor) {
        if (q.is_identity) {
          // the identity transfers any order: only the domain shrinks
          MonotonePiece r = p;
          PointSet pd = p.domain, qd = q.domain;
          Func pm = p.map;
          r.domain = PointSet(p.domain.carrier(),
                              [pd, qd, pm](const Ordinal& x) {
                                if (!pd.contains(x)) return false;
                                auto mid = pm.fwd(x);
                                return mid && qd.contains(*mid);
                              },
                              p.domain.desc() + "+id");
          next.push_back(std::move(r));
          continue;
        }
        // hand the image from order `p.member` to order `q.member` on a part
        // where the two orders agree
        for (const IntervalSet& c : co.partition_pair(p.member, q.member)) {
          PointSet dom = and_image_in(p.domain, p.map, c, q.domain);
          next.push_back({std::move(dom), p.increasing == q.increasing,
                          func_compose(q.map, p.map), q.member, false});
        }
      }
    cur = std::move(next);
  }
  // land the image back in the target order
  std::vector<MonotonePiece> out;
  for (const MonotonePiece& p : cur) {
    PointSet all(p.domain.carrier(), [](const Ordinal&) { return true; }, "all");
    if (p.member == target) {
      out.push_back({and_image_in(p.domain, p.map, at, all), p.increasing, p.map, target,
                     p.is_identity});
      continue;
    }
    for (const IntervalSet& c : co.partition_pair(p.member, target))
      out.push_back({and_image_in(p.domain, p.map, c, all), p.increasing, p.map, target, false});
  }
  return out;
}

}  // namespace permhom
