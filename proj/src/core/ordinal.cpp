#include "core/ordinal.hpp"

#include <sstream>

namespace permhom {

Ordinal Ordinal::omega_pow(std::uint32_t e, std::uint64_t c) {
  Ordinal o;
  if (c == 0) return o;
  o.terms_.push_back({e, c});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].coeff == 0) throw std::invalid_argument("CNF coefficient must be >= 1");
    if (i > 0 && ts[i - 1].exp <= ts[i].exp)
      throw std::invalid_argument("CNF exponents must be strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(ts);
  return o;
}

std::uint64_t Ordinal::natural() const {
  if (is_zero()) return 0;
  if (!is_natural()) throw std::domain_error("ordinal is not a natural number: " + str());
  return terms_[0].coeff;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (terms_[i].exp != o.terms_[i].exp)
      return terms_[i].exp <=> o.terms_[i].exp;
    if (terms_[i].coeff != o.terms_[i].coeff)
      return terms_[i].coeff <=> o.terms_[i].coeff;
  }
  return terms_.size() <=> o.terms_.size();
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << '+';
    first = false;
    if (t.exp == 0) {
      os << t.coeff;
    } else {
      if (t.exp == 1)
        os << 'w';
      else
        os << "w^" << t.exp;
      if (t.coeff != 1) os << '*' << t.coeff;
    }
  }
  return os.str();
}

namespace {

Ordinal::Term parse_term(const std::string& tok) {
  std::size_t i = 0;
  auto read_nat = [&]() -> std::uint64_t {
    if (i >= tok.size() || !std::isdigit(static_cast<unsigned char>(tok[i])))
      throw std::invalid_argument("bad ordinal token: " + tok);
    std::uint64_t v = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
      v = v * 10 + static_cast<std::uint64_t>(tok[i++] - '0');
    return v;
  };
  if (tok.empty()) throw std::invalid_argument("empty ordinal token");
  if (tok[0] != 'w') {
    std::uint64_t v = read_nat();
    if (i != tok.size()) throw std::invalid_argument("bad ordinal token: " + tok);
    return {0, v};
  }
  i = 1;
  std::uint32_t e = 1;
  if (i < tok.size() && tok[i] == '^') {
    ++i;
    std::uint64_t v = read_nat();
    if (v == 0) throw std::invalid_argument("w^0 is not allowed, write the coefficient: " + tok);
    e = static_cast<std::uint32_t>(v);
  }
  std::uint64_t c = 1;
  if (i < tok.size() && tok[i] == '*') {
    ++i;
    c = read_nat();
  }
  if (i != tok.size()) throw std::invalid_argument("bad ordinal token: " + tok);
  return {e, c};
}

}  // namespace

Ordinal Ordinal::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty ordinal string");
  Ordinal acc;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('+', pos);
    std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    Ordinal::Term t = parse_term(tok);
    if (t.coeff > 0) acc = ord_add(acc, Ordinal::from_terms({t}));
    if (next == std::string::npos) break;
    pos = next + 1;
    if (pos == s.size()) throw std::invalid_argument("trailing '+' in ordinal: " + s);
  }
  return acc;
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  std::uint32_t lead = b.terms().front().exp;
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    if (t.exp > lead) out.push_back(t);
  }
  out.push_back(b.terms().front());
  // a's term of equal exponent merges into b's leading term
  for (const auto& t : a.terms()) {
    if (t.exp == lead) out.back().coeff += t.coeff;
  }
  for (std::size_t i = 1; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  return Ordinal::from_terms(std::move(out));
}

Ordinal ord_left_sub(const Ordinal& a, const Ordinal& b) {
  if (a > b) throw std::domain_error("ord_left_sub: " + a.str() + " > " + b.str());
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::size_t i = 0;
  while (i < at.size() && i < bt.size() && at[i] == bt[i]) ++i;
  if (i == at.size()) {
    // remainder of b
    std::vector<Ordinal::Term> out(bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end());
    return Ordinal::from_terms(std::move(out));
  }
  // first differing position: a <= b forces exp_a <= exp_b here
  if (at[i].exp < bt[i].exp) {
    std::vector<Ordinal::Term> out(bt.begin() + static_cast<std::ptrdiff_t>(i), bt.end());
    return Ordinal::from_terms(std::move(out));
  }
  // equal exponent, coefficient must grow
  std::vector<Ordinal::Term> out;
  out.push_back({bt[i].exp, bt[i].coeff - at[i].coeff});
  for (std::size_t j = i + 1; j < bt.size(); ++j) out.push_back(bt[j]);
  return Ordinal::from_terms(std::move(out));
}

}  // namespace permhom
