#include "core/func.hpp"

#include <stdexcept>

namespace permhom {

Func func_identity(std::string name) {
  auto id = [](const Ordinal& x) -> std::optional<Ordinal> { return x; };
  return {std::move(name), id, id};
}

Func func_invert(const Func& f) {
  return {f.name + "^-1", f.bwd, f.fwd};
}

Func func_compose(const Func& f, const Func& g) {
  Func out;
  out.name = f.name + "." + g.name;
  out.fwd = [f, g](const Ordinal& x) -> std::optional<Ordinal> {
    auto m = g.fwd(x);
    if (!m) return std::nullopt;
    return f.fwd(*m);
  };
  out.bwd = [f, g](const Ordinal& y) -> std::optional<Ordinal> {
    auto m = f.bwd(y);
    if (!m) return std::nullopt;
    return g.bwd(*m);
  };
  return out;
}

Func func_restrict_square(const Func& f, std::function<bool(const Ordinal&)> in_a) {
  Func out;
  out.name = f.name + "|sq";
  out.fwd = [f, in_a](const Ordinal& x) -> std::optional<Ordinal> {
    if (!in_a(x)) return std::nullopt;
    auto y = f.fwd(x);
    if (!y || !in_a(*y)) return std::nullopt;
    return y;
  };
  out.bwd = [f, in_a](const Ordinal& y) -> std::optional<Ordinal> {
    if (!in_a(y)) return std::nullopt;
    auto x = f.bwd(y);
    if (!x || !in_a(*x)) return std::nullopt;
    return x;
  };
  return out;
}

FiniteInjection FiniteInjection::from_pairs(const std::vector<std::pair<Ordinal, Ordinal>>& ps) {
  FiniteInjection f;
  for (const auto& [x, y] : ps) f.insert(x, y);
  return f;
}

void FiniteInjection::insert(const Ordinal& x, const Ordinal& y) {
  auto it = fw_.find(x);
  if (it != fw_.end()) {
    if (it->second == y) return;
    throw std::invalid_argument("FiniteInjection: " + x.str() + " already mapped");
  }
  if (bw_.count(y)) throw std::invalid_argument("FiniteInjection: " + y.str() + " already hit");
  fw_.emplace(x, y);
  bw_.emplace(y, x);
}

std::optional<Ordinal> FiniteInjection::apply(const Ordinal& x) const {
  auto it = fw_.find(x);
  if (it == fw_.end()) return std::nullopt;
  return it->second;
}

std::optional<Ordinal> FiniteInjection::apply_inv(const Ordinal& y) const {
  auto it = bw_.find(y);
  if (it == bw_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Ordinal, Ordinal>> FiniteInjection::pairs() const {
  return {fw_.begin(), fw_.end()};
}

std::vector<Ordinal> FiniteInjection::dom() const {
  std::vector<Ordinal> out;
  for (const auto& [x, _] : fw_) out.push_back(x);
  return out;
}

std::vector<Ordinal> FiniteInjection::ran() const {
  std::vector<Ordinal> out;
  for (const auto& [y, _] : bw_) out.push_back(y);
  return out;
}

std::vector<Ordinal> FiniteInjection::support() const {
  std::vector<Ordinal> out;
  for (const auto& [x, y] : fw_)
    if (x != y) out.push_back(x);
  return out;
}

FiniteInjection FiniteInjection::inverted() const {
  FiniteInjection out;
  out.fw_ = bw_;
  out.bw_ = fw_;
  return out;
}

FiniteInjection FiniteInjection::composed_after(const FiniteInjection& g) const {
  FiniteInjection out;
  for (const auto& [x, m] : g.fw_) {
    auto y = apply(m);
    if (y) out.insert(x, *y);
  }
  return out;
}

FiniteInjection FiniteInjection::restricted_square(
    const std::function<bool(const Ordinal&)>& in_a) const {
  FiniteInjection out;
  for (const auto& [x, y] : fw_)
    if (in_a(x) && in_a(y)) out.insert(x, y);
  return out;
}

Func FiniteInjection::as_func(std::string name) const {
  auto self = std::make_shared<FiniteInjection>(*this);
  return {std::move(name),
          [self](const Ordinal& x) { return self->apply(x); },
          [self](const Ordinal& y) { return self->apply_inv(y); }};
}

Ordinal ExtendedPerm::apply(const Ordinal& x) const {
  if (!(x < lambda)) throw std::out_of_range("extended permutation applied beyond lambda");
  if (!in_base(x)) return x;
  auto y = base.fwd(x);
  if (!y) throw std::logic_error("extended permutation: base undefined at " + x.str());
  return *y;
}

Ordinal ExtendedPerm::apply_inv(const Ordinal& y) const {
  if (!(y < lambda)) throw std::out_of_range("extended permutation applied beyond lambda");
  if (!in_base(y)) return y;
  auto x = base.bwd(y);
  if (!x) throw std::logic_error("extended permutation: base not onto at " + y.str());
  return *x;
}

Func ExtendedPerm::as_func(std::string name) const {
  auto self = std::make_shared<ExtendedPerm>(*this);
  if (name.empty()) name = base.name + "+";
  return {std::move(name),
          [self](const Ordinal& x) -> std::optional<Ordinal> { return self->apply(x); },
          [self](const Ordinal& y) -> std::optional<Ordinal> { return self->apply_inv(y); }};
}

ExtendedPerm extend_identity(const FiniteInjection& f, const IntervalSet& a,
                             const Ordinal& lambda) {
  if (!a.order_type().is_finite())
    throw std::invalid_argument("extend_identity: finite base expected for exact check");
  // dom(f) = ran(f) = a, exactly
  std::size_t card = a.order_type().is_zero() ? 0 : a.order_type().natural();
  if (f.size() != card)
    throw std::invalid_argument("extend_identity: base is not a permutation of its set");
  for (const auto& [x, y] : f.pairs())
    if (!a.contains(x) || !a.contains(y))
      throw std::invalid_argument("extend_identity: base leaves its set");
  return extend_identity(f.as_func("f"), [a](const Ordinal& x) { return a.contains(x); }, lambda,
                         a.str());
}

ExtendedPerm extend_identity(Func base, std::function<bool(const Ordinal&)> in_base,
                             const Ordinal& lambda, std::string base_desc) {
  return {std::move(base), std::move(in_base), lambda, std::move(base_desc)};
}

}  // namespace permhom
