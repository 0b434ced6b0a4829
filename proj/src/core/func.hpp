#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/interval_set.hpp"
#include "core/point_set.hpp"

namespace permhom {

/// A partial injection given pointwise: forward and backward evaluation both
/// answer in finite time (possibly "undefined"). Backed by finite maps,
/// order isomorphisms, or construction engines.
struct Func {
  std::string name;
  std::function<std::optional<Ordinal>(const Ordinal&)> fwd;
  std::function<std::optional<Ordinal>(const Ordinal&)> bwd;
};

Func func_identity(std::string name = "id");
Func func_invert(const Func& f);
/// f after g: the rightmost map applies first.
Func func_compose(const Func& f, const Func& g);
/// Keeps only pairs with both coordinates satisfying the membership test.
Func func_restrict_square(const Func& f, std::function<bool(const Ordinal&)> in_a);

/// Finite explicit partial injection with exact domain and range.
class FiniteInjection {
public:
  FiniteInjection() = default;
  static FiniteInjection from_pairs(const std::vector<std::pair<Ordinal, Ordinal>>& ps);

  /// Throws std::invalid_argument if the pair breaks injectivity or functionality.
  void insert(const Ordinal& x, const Ordinal& y);
  std::optional<Ordinal> apply(const Ordinal& x) const;
  std::optional<Ordinal> apply_inv(const Ordinal& y) const;
  bool in_dom(const Ordinal& x) const { return fw_.count(x) > 0; }
  bool in_ran(const Ordinal& y) const { return bw_.count(y) > 0; }
  std::size_t size() const { return fw_.size(); }
  /// Pairs sorted by domain point.
  std::vector<std::pair<Ordinal, Ordinal>> pairs() const;
  std::vector<Ordinal> dom() const;
  std::vector<Ordinal> ran() const;
  /// Moved points of dom: { x : f(x) != x }.
  std::vector<Ordinal> support() const;

  FiniteInjection inverted() const;
  /// this after g (relational composition of graphs).
  FiniteInjection composed_after(const FiniteInjection& g) const;
  FiniteInjection restricted_square(const std::function<bool(const Ordinal&)>& in_a) const;

  Func as_func(std::string name = "finite") const;
  friend bool operator==(const FiniteInjection&, const FiniteInjection&) = default;

private:
  std::map<Ordinal, Ordinal> fw_, bw_;
};

/// f+ : acts as `base` on its base set and as the identity elsewhere on
/// [0, lambda).
struct ExtendedPerm {
  Func base;
  std::function<bool(const Ordinal&)> in_base;
  Ordinal lambda;
  std::string base_desc;

  /// Total on [0, lambda): throws std::out_of_range beyond lambda, and
  /// std::logic_error if base is partial at a base point (not a permutation).
  Ordinal apply(const Ordinal& x) const;
  Ordinal apply_inv(const Ordinal& y) const;
  Func as_func(std::string name = "") const;
};

/// f u (id on [0,lambda) \ A); for a finite base over a finite A the
/// permutation requirement dom(f) = ran(f) = A is checked exactly.
ExtendedPerm extend_identity(const FiniteInjection& f, const IntervalSet& a, const Ordinal& lambda);
ExtendedPerm extend_identity(Func base, std::function<bool(const Ordinal&)> in_base,
                             const Ordinal& lambda, std::string base_desc);

}  // namespace permhom
