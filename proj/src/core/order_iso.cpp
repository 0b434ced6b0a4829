#include "core/order_iso.hpp"

namespace permhom {

OrderIso::OrderIso(IntervalSet source, IntervalSet target)
    : src_(std::move(source)), tgt_(std::move(target)) {
  if (src_.order_type() != tgt_.order_type())
    throw std::invalid_argument("OrderIso: order types differ: " + src_.str() + " vs " +
                                tgt_.str());
}

Ordinal OrderIso::apply(const Ordinal& x) const {
  return tgt_.element_at(src_.position_of(x));
}

Ordinal OrderIso::apply_inv(const Ordinal& y) const {
  return src_.element_at(tgt_.position_of(y));
}

IntervalSet OrderIso::image(const IntervalSet& m) const {
  return tgt_.elements_at(src_.positions_of(m));
}

IntervalSet OrderIso::preimage(const IntervalSet& m) const {
  return src_.elements_at(tgt_.positions_of(m));
}

OrderIso OrderIso::restricted_source(const IntervalSet& m) const {
  IntervalSet s = iset_intersect(src_, m);
  return OrderIso(s, image(s));
}

OrderIso OrderIso::compose(const OrderIso& rho1, const OrderIso& rho0) {
  IntervalSet mid = iset_intersect(rho0.target(), rho1.source());
  return OrderIso(rho0.preimage(mid), rho1.image(mid));
}

bool OrderIso::fixes_initial(const Ordinal& kappa) const {
  if (kappa.is_zero()) return true;
  IntervalSet seg = IntervalSet::interval(Ordinal(0), kappa);
  return seg.subset_of(src_) && seg.subset_of(tgt_);
}

Func OrderIso::as_func(std::string name) const {
  auto self = std::make_shared<OrderIso>(*this);
  return {std::move(name),
          [self](const Ordinal& x) -> std::optional<Ordinal> {
            if (!self->source().contains(x)) return std::nullopt;
            return self->apply(x);
          },
          [self](const Ordinal& y) -> std::optional<Ordinal> {
            if (!self->target().contains(y)) return std::nullopt;
            return self->apply_inv(y);
          }};
}

}  // namespace permhom
