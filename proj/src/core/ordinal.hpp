#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace permhom {

/// Ordinal below w^w in Cantor normal form: a finite sum w^e0*c0 + w^e1*c1 + ...
/// with e0 > e1 > ... and all ci >= 1. The empty sum is 0.
class Ordinal {
public:
  struct Term {
    std::uint32_t exp;
    std::uint64_t coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  Ordinal(std::uint64_t n) {
    if (n > 0) terms_.push_back({0, n});
  }

  static Ordinal omega() { return omega_pow(1); }
  static Ordinal omega_pow(std::uint32_t e, std::uint64_t c = 1);
  static Ordinal from_terms(std::vector<Term> ts);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || terms_.front().exp == 0; }
  bool is_natural() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == 0); }
  /// Value as a natural number; throws unless is_natural().
  std::uint64_t natural() const;
  /// Largest exponent appearing (0 for finite ordinals, including 0).
  std::uint32_t degree() const { return terms_.empty() ? 0 : terms_.front().exp; }

  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  std::strong_ordering operator<=>(const Ordinal& o) const;
  bool operator<(const Ordinal& o) const { return (*this <=> o) == std::strong_ordering::less; }
  bool operator<=(const Ordinal& o) const { return (*this <=> o) != std::strong_ordering::greater; }
  bool operator>(const Ordinal& o) const { return o < *this; }
  bool operator>=(const Ordinal& o) const { return o <= *this; }

  /// Textual form, e.g. "w^2*3+w+5"; "0" for zero.
  std::string str() const;
  static Ordinal parse(const std::string& s);

private:
  std::vector<Term> terms_;
};

/// Ordinal sum a + b in CNF.
Ordinal ord_add(const Ordinal& a, const Ordinal& b);

/// The unique d with a + d = b; requires a <= b, throws std::domain_error otherwise.
Ordinal ord_left_sub(const Ordinal& a, const Ordinal& b);

inline Ordinal ord_succ(const Ordinal& a) { return ord_add(a, Ordinal(1)); }

}  // namespace permhom
