#include "core/point_set.hpp"

#include <stdexcept>

namespace permhom {

CanonicalEnum::CanonicalEnum(IntervalSet s) : set_(std::move(s)), type_(set_.order_type()) {
  finite_ = type_.is_finite();
  if (finite_) card_ = type_.is_zero() ? 0 : type_.natural();
  dim_ = type_.degree() + 1;
}

void CanonicalEnum::fill_pending_() {
  // all positions whose CNF digit vector (digit at exponent e, e < dim_) sums
  // to sum_, in lexicographic order, most significant digit first
  pending_.clear();
  pending_ix_ = 0;
  std::vector<std::uint64_t> digits(dim_, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t rest) -> void {
    if (i + 1 == dim_) {
      digits[i] = rest;
      std::vector<Ordinal::Term> ts;
      for (std::size_t j = 0; j < dim_; ++j)
        if (digits[j] > 0) ts.push_back({dim_ - 1 - static_cast<std::uint32_t>(j), digits[j]});
      Ordinal pos = Ordinal::from_terms(std::move(ts));
      if (pos < type_) pending_.push_back(std::move(pos));
      return;
    }
    for (std::uint64_t d = 0; d <= rest; ++d) {
      digits[i] = d;
      if (d > 0) {
        // prune: completions only add lower-order terms and larger d only
        // grows the prefix, so once the prefix reaches type_ nothing below
        // this point can satisfy pos < type_
        std::vector<Ordinal::Term> ts;
        for (std::size_t j = 0; j <= i; ++j)
          if (digits[j] > 0) ts.push_back({dim_ - 1 - static_cast<std::uint32_t>(j), digits[j]});
        if (!(Ordinal::from_terms(std::move(ts)) < type_)) break;
      }
      self(self, i + 1, rest - d);
    }
    digits[i] = 0;
  };
  rec(rec, 0, sum_);
}

std::optional<Ordinal> CanonicalEnum::next() {
  if (finite_ && yielded_ >= card_) return std::nullopt;
  while (true) {
    if (pending_ix_ >= pending_.size()) {
      fill_pending_();
      if (pending_.empty()) {
        ++sum_;
        continue;
      }
    }
    Ordinal pos = pending_[pending_ix_++];
    if (pending_ix_ >= pending_.size()) ++sum_;
    ++yielded_;
    return set_.element_at(pos);
  }
}

PointSet::PointSet(IntervalSet s) : st_(std::make_shared<State>(std::move(s))) {
  st_->desc = st_->carrier.str();
}

PointSet::PointSet(IntervalSet carrier, std::function<bool(const Ordinal&)> pred, std::string desc)
    : st_(std::make_shared<State>(std::move(carrier))) {
  st_->pred = std::move(pred);
  st_->desc = std::move(desc);
}

bool PointSet::contains(const Ordinal& x) const {
  if (!st_->carrier.contains(x)) return false;
  return !st_->pred || st_->pred(x);
}

std::optional<Ordinal> PointSet::nth(std::size_t n, std::size_t scan_cap) const {
  auto& s = *st_;
  while (s.cache.size() <= n && !s.exhausted) {
    std::size_t scanned = 0;
    while (true) {
      auto x = s.en.next();
      if (!x) {
        s.exhausted = true;
        break;
      }
      if (!s.pred || s.pred(*x)) {
        s.cache.push_back(*x);
        break;
      }
      if (++scanned > scan_cap)
        throw std::runtime_error("PointSet scan budget exhausted for " + s.desc);
    }
  }
  if (n < s.cache.size()) return s.cache[n];
  return std::nullopt;
}

std::size_t PointSet::index_of(const Ordinal& x, std::size_t scan_cap) const {
  if (!contains(x)) throw std::out_of_range("index_of: " + x.str() + " not in " + st_->desc);
  for (std::size_t i = 0;; ++i) {
    auto v = nth(i, scan_cap);
    if (!v) throw std::logic_error("index_of: enumeration exhausted before member found");
    if (*v == x) return i;
  }
}

std::vector<Ordinal> PointSet::prefix(std::size_t n, bool exact) const {
  std::vector<Ordinal> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = nth(i);
    if (!v) {
      if (exact) throw std::out_of_range("PointSet prefix: set has fewer than requested elements");
      break;
    }
    out.push_back(*v);
  }
  return out;
}

}  // namespace permhom
