#pragma once

#include "core/func.hpp"
#include "core/interval_set.hpp"

namespace permhom {

/// The canonical order isomorphism between two interval sets of equal order
/// type: the unique order-preserving bijection, evaluated by position
/// matching.
class OrderIso {
public:
  OrderIso() = default;
  OrderIso(IntervalSet source, IntervalSet target);

  const IntervalSet& source() const { return src_; }
  const IntervalSet& target() const { return tgt_; }
  bool is_identity() const { return src_ == tgt_; }
  bool empty() const { return src_.empty(); }

  /// Throws std::out_of_range if x is not in the source.
  Ordinal apply(const Ordinal& x) const;
  Ordinal apply_inv(const Ordinal& y) const;

  /// Image of m ∩ source under the iso, as an interval set.
  IntervalSet image(const IntervalSet& m) const;
  IntervalSet preimage(const IntervalSet& m) const;

  OrderIso inverted() const { return OrderIso(tgt_, src_); }
  /// Restriction to (m ∩ source) -> image; again a canonical iso.
  OrderIso restricted_source(const IntervalSet& m) const;

  /// rho1 ∘ rho0 (rho0 applies first): the canonical iso with source
  /// rho0^-1[tgt0 ∩ src1] and target rho1[tgt0 ∩ src1], which pointwise
  /// equals the composition on that source.
  static OrderIso compose(const OrderIso& rho1, const OrderIso& rho0);

  /// Both sets contain [0,kappa) as an initial segment, so the iso fixes
  /// kappa pointwise.
  bool fixes_initial(const Ordinal& kappa) const;

  Func as_func(std::string name = "rho") const;
  friend bool operator==(const OrderIso&, const OrderIso&) = default;

private:
  IntervalSet src_, tgt_;
};

}  // namespace permhom
