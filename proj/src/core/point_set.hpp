#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/interval_set.hpp"

namespace permhom {

/// Enumerates the elements of an interval set in a canonical order of type
/// omega (increasing order whenever the order type is at most omega; a
/// deterministic dovetail over CNF coefficient vectors otherwise).
class CanonicalEnum {
public:
  explicit CanonicalEnum(IntervalSet s);
  /// Next element; nullopt when the set is exhausted (finite sets only).
  std::optional<Ordinal> next();

private:
  IntervalSet set_;
  Ordinal type_;
  std::uint64_t yielded_ = 0;
  bool finite_;
  std::uint64_t card_ = 0;       // when finite
  std::uint32_t dim_;            // number of CNF digits of a position
  std::uint64_t sum_ = 0;        // current digit sum
  std::vector<Ordinal> pending_; // positions for the current sum, in order
  std::size_t pending_ix_ = 0;
  void fill_pending_();
};

/// Countable set of ordinals with decidable membership and a deterministic
/// enumeration: an interval-set carrier filtered by an optional predicate.
/// Used for the sets the interval calculus cannot house (evens, images, ...).
class PointSet {
public:
  PointSet() : PointSet(IntervalSet{}) {}
  explicit PointSet(IntervalSet s);
  PointSet(IntervalSet carrier, std::function<bool(const Ordinal&)> pred, std::string desc);

  bool contains(const Ordinal& x) const;
  /// n-th element of the enumeration; nullopt if the set has fewer elements.
  /// scan_cap bounds the carrier scan between consecutive hits.
  std::optional<Ordinal> nth(std::size_t n, std::size_t scan_cap = 1u << 20) const;
  /// Index of x in the enumeration; x must satisfy contains(x).
  std::size_t index_of(const Ordinal& x, std::size_t scan_cap = 1u << 20) const;
  /// First n elements (throws if the set proves smaller and `exact`).
  std::vector<Ordinal> prefix(std::size_t n, bool exact = true) const;

  const IntervalSet& carrier() const { return st_->carrier; }
  const std::string& desc() const { return st_->desc; }
  bool is_plain_interval_set() const { return !st_->pred; }

private:
  struct State {
    IntervalSet carrier;
    std::function<bool(const Ordinal&)> pred;
    std::string desc;
    CanonicalEnum en;
    std::vector<Ordinal> cache;
    bool exhausted = false;
    explicit State(IntervalSet c) : carrier(c), en(c) {}
  };
  std::shared_ptr<State> st_;
};

}  // namespace permhom
