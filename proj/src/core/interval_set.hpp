#pragma once

#include <string>
#include <vector>

#include "core/ordinal.hpp"

namespace permhom {

/// Normalized finite union of half-open ordinal intervals [lo, hi).
/// Intervals are sorted, pairwise disjoint and non-adjacent, so equality of
/// sets is equality of representations.
class IntervalSet {
public:
  struct Interval {
    Ordinal lo, hi;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  IntervalSet() = default;
  static IntervalSet interval(Ordinal lo, Ordinal hi);
  static IntervalSet from_intervals(std::vector<Interval> iv);
  static IntervalSet singleton(const Ordinal& x) { return interval(x, ord_succ(x)); }

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  bool contains(const Ordinal& x) const;
  bool subset_of(const IntervalSet& o) const;
  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  bool operator<(const IntervalSet& o) const;  // arbitrary total order, for containers

  /// Sum of interval lengths in interval order; 0 for the empty set.
  Ordinal order_type() const;
  /// Element at position p (p < order_type()); strictly increasing in p.
  Ordinal element_at(const Ordinal& p) const;
  /// Inverse of element_at; throws if x is not a member.
  Ordinal position_of(const Ordinal& x) const;

  /// Position set { position_of(x) : x in M, x in *this } as an interval set.
  IntervalSet positions_of(const IntervalSet& m) const;
  /// Element set { element_at(p) : p in P, p < order_type() }.
  IntervalSet elements_at(const IntervalSet& positions) const;

  std::string str() const;               // "[a,b)|[c,d)" or "empty"
  static IntervalSet parse(const std::string& s);

private:
  std::vector<Interval> iv_;
};

IntervalSet iset_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet iset_intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet iset_difference(const IntervalSet& a, const IntervalSet& b);

}  // namespace permhom
