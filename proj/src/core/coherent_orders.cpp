#include "core/coherent_orders.hpp"

#include <stdexcept>

namespace permhom {

CoherentOrders::CoherentOrders(NiceFamily fam) : fam_(std::move(fam)) {
  if (fam_.I.size() != fam_.members.size())
    throw std::invalid_argument("coherent orders: witness lists do not match the members");
  streams_.resize(fam_.size());
  for (std::size_t b = 0; b < fam_.size(); ++b) init_stream_(b);
}

void CoherentOrders::init_stream_(std::size_t b) {
  Stream& st = streams_[b];
  const IntervalSet& a = fam_.members[b];
  IntervalSet seen;
  for (std::size_t z : fam_.I[b]) {
    if (z >= b) throw std::invalid_argument("coherent orders: witness index not below its member");
    IntervalSet d = iset_difference(fam_.members[z], seen);
    st.pieces.push_back(iset_intersect(a, d));
    st.src.push_back(z);
    seen = iset_union(seen, fam_.members[z]);
  }
  IntervalSet leftover = iset_difference(a, seen);
  st.pieces.push_back(leftover);
  st.src.push_back(static_cast<std::size_t>(-1));
  st.hits.resize(st.pieces.size());
  st.scanned.assign(st.pieces.size(), 0);
  st.ambient = std::make_unique<CanonicalEnum>(leftover);
  st.exhausted = a.empty();
}

const std::vector<IntervalSet>& CoherentOrders::pieces(std::size_t b) {
  return streams_.at(b).pieces;
}

std::optional<Ordinal> CoherentOrders::piece_nth_(std::size_t b, std::size_t p, std::uint64_t n) {
  Stream& st = streams_[b];
  const IntervalSet& piece = st.pieces[p];
  Ordinal tp = piece.order_type();
  if (tp.is_finite() && n >= (tp.is_zero() ? 0 : tp.natural())) return std::nullopt;
  auto& hits = st.hits[p];
  if (st.src[p] == static_cast<std::size_t>(-1)) {
    while (hits.size() <= n) {
      auto x = st.ambient->next();
      if (!x) return std::nullopt;
      hits.push_back(*x);
    }
    return hits[n];
  }
  std::size_t child = st.src[p];
  while (hits.size() <= n) {
    if (st.scanned[p] > (1u << 20))
      throw std::runtime_error("coherent orders: piece scan budget exhausted");
    Ordinal x = element_of_rank(child, st.scanned[p]++);
    if (piece.contains(x)) hits.push_back(x);
  }
  return hits[n];
}

bool CoherentOrders::emit_next_(std::size_t b) {
  Stream& st = streams_[b];
  if (st.exhausted) return false;
  Ordinal tp = fam_.members[b].order_type();
  if (tp.is_finite() && st.out.size() >= tp.natural()) {
    st.exhausted = true;
    return false;
  }
  // walk the dovetail: diagonal s = piece + n, ascending n inside a diagonal
  while (true) {
    if (st.diag_n > st.diag || st.diag - st.diag_n >= st.pieces.size()) {
      if (st.diag_n > st.diag) {
        ++st.diag;
        st.diag_n = 0;
      } else {
        ++st.diag_n;
      }
      continue;
    }
    std::size_t p = static_cast<std::size_t>(st.diag - st.diag_n);
    std::uint64_t n = st.diag_n;
    ++st.diag_n;
    auto x = piece_nth_(b, p, n);
    if (!x) continue;
    st.rank[*x] = st.out.size();
    st.out.push_back(*x);
    return true;
  }
}

Ordinal CoherentOrders::element_of_rank(std::size_t b, std::uint64_t r) {
  Stream& st = streams_.at(b);
  while (st.out.size() <= r)
    if (!emit_next_(b)) throw std::out_of_range("coherent orders: rank beyond a finite member");
  return st.out[r];
}

std::uint64_t CoherentOrders::rank_of(std::size_t b, const Ordinal& x, std::uint64_t cap) {
  Stream& st = streams_.at(b);
  if (!fam_.members[b].contains(x)) throw std::invalid_argument("rank_of: point outside the member");
  while (true) {
    auto it = st.rank.find(x);
    if (it != st.rank.end()) return it->second;
    if (st.out.size() >= cap) throw std::runtime_error("rank_of: search budget exhausted");
    if (!emit_next_(b)) throw std::logic_error("rank_of: member exhausted before the point appeared");
  }
}

std::vector<Ordinal> CoherentOrders::order_prefix(std::size_t b, std::size_t n) {
  std::vector<Ordinal> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    Stream& st = streams_.at(b);
    if (st.exhausted && st.out.size() <= r) break;
    try {
      out.push_back(element_of_rank(b, r));
    } catch (const std::out_of_range&) {
      break;
    }
  }
  return out;
}

std::vector<IntervalSet> CoherentOrders::partition_pair(std::size_t a, std::size_t b) {
  if (a >= fam_.size() || b >= fam_.size()) throw std::invalid_argument("partition_pair: bad index");
  auto key = std::make_pair(a, b);
  auto it = part_cache_.find(key);
  if (it != part_cache_.end()) return it->second;

  IntervalSet common = iset_intersect(fam_.members[a], fam_.members[b]);
  std::vector<IntervalSet> out;
  if (common.empty()) {
    part_cache_[key] = out;
    return out;
  }
  if (a == b) {
    out.push_back(common);
    part_cache_[key] = out;
    return out;
  }
  std::size_t hi = std::max(a, b), lo = std::min(a, b);
  IntervalSet seen, covered;
  for (std::size_t z : fam_.I[hi]) {
    IntervalSet d = iset_difference(fam_.members[z], seen);
    seen = iset_union(seen, fam_.members[z]);
    IntervalSet c = iset_intersect(common, d);
    if (c.empty()) continue;
    // on c the hi-order follows member z, so agreement reduces to (lo, z)
    for (const IntervalSet& r : partition_pair(lo, z)) {
      IntervalSet p = iset_intersect(c, r);
      if (!p.empty()) out.push_back(p);
    }
    covered = iset_union(covered, c);
  }
  IntervalSet leftover = iset_difference(common, covered);
  // nonempty only when the witness containment fails; kept so the output
  // still partitions the intersection, with agreement unattested on it
  if (!leftover.empty()) out.push_back(leftover);
  part_cache_[key] = out;
  return out;
}

}  // namespace permhom
