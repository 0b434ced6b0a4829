#include "core/term.hpp"

#include <sstream>
#include <stdexcept>

namespace permhom {

std::string term_str(const Term& t) {
  if (t.empty()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const auto& a : t) {
    if (!first) os << '.';
    first = false;
    switch (a.kind) {
      case Atom::Kind::X: os << 'x'; break;
      case Atom::Kind::XInv: os << "x^-1"; break;
      case Atom::Kind::Sym: os << a.id; break;
      case Atom::Kind::SymInv: os << a.id << "^-1"; break;
    }
  }
  return os.str();
}

Term term_parse(const std::string& s) {
  if (s.empty() || s == "e") return {};
  Term t;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find('.', pos);
    std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok.empty()) throw std::invalid_argument("empty atom in term: " + s);
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok == "x")
      t.push_back({inv ? Atom::Kind::XInv : Atom::Kind::X, ""});
    else
      t.push_back({inv ? Atom::Kind::SymInv : Atom::Kind::Sym, tok});
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return t;
}

const Func& TermContext::lookup(const std::string& id) const {
  auto it = registry.find(id);
  if (it == registry.end()) throw std::invalid_argument("unregistered function id: " + id);
  return it->second;
}

std::optional<Ordinal> term_eval(const Term& t, const Func& g, const Ordinal& alpha,
                                 const TermContext& ctx) {
  Ordinal v = alpha;
  for (std::size_t i = t.size(); i-- > 0;) {
    const Atom& a = t[i];
    std::optional<Ordinal> next;
    switch (a.kind) {
      case Atom::Kind::X: next = g.fwd(v); break;
      case Atom::Kind::XInv: next = g.bwd(v); break;
      case Atom::Kind::Sym: next = ctx.lookup(a.id).fwd(v); break;
      case Atom::Kind::SymInv: next = ctx.lookup(a.id).bwd(v); break;
    }
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

std::optional<Ordinal> term_eval_inv(const Term& t, const Func& g, const Ordinal& beta,
                                     const TermContext& ctx) {
  Ordinal v = beta;
  for (const Atom& a : t) {
    std::optional<Ordinal> next;
    switch (a.kind) {
      case Atom::Kind::X: next = g.bwd(v); break;
      case Atom::Kind::XInv: next = g.fwd(v); break;
      case Atom::Kind::Sym: next = ctx.lookup(a.id).bwd(v); break;
      case Atom::Kind::SymInv: next = ctx.lookup(a.id).fwd(v); break;
    }
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

std::set<Term> subterm_closure(const std::set<Term>& h, std::size_t max_len) {
  std::set<Term> out;
  out.insert(Term{});
  for (const auto& t : h) {
    if (t.size() > max_len)
      throw std::invalid_argument("subterm_closure: term longer than bound: " + term_str(t));
    // all subsequences via bitmask
    std::size_t n = t.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Term sub;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) sub.push_back(t[i]);
      out.insert(std::move(sub));
    }
  }
  return out;
}

bool graph_member(const Ordinal& alpha, const Ordinal& alpha_star, const std::set<Term>& h,
                  const Func& g, const TermContext& ctx) {
  for (const auto& t : h) {
    auto v = term_eval(t, g, alpha, ctx);
    if (v && *v == alpha_star) return true;
  }
  return false;
}

std::optional<EscapeResult> escape_search(const Func& y, const PointSet& ydom,
                                          const std::set<Term>& h, const Func& g,
                                          const TermContext& ctx, const Ordinal& n,
                                          std::size_t budget) {
  std::size_t scanned = 0;
  for (std::size_t i = 0; scanned < budget; ++i) {
    auto a = ydom.nth(i);
    if (!a) return std::nullopt;  // dom(y) exhausted: finite y
    if (*a < n) continue;
    ++scanned;
    auto ya = y.fwd(*a);
    if (!ya) continue;
    if (!graph_member(*a, *ya, h, g, ctx)) return EscapeResult{*a, *ya, scanned};
  }
  return std::nullopt;
}

std::set<Term> subsequence_cover(const std::vector<std::pair<std::string, int>>& word) {
  std::set<Term> out;
  std::size_t n = word.size();
  if (n > 20) throw std::invalid_argument("subsequence_cover: word too long");
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Term sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        const auto& [id, exp] = word[i];
        sub.push_back({exp < 0 ? Atom::Kind::SymInv : Atom::Kind::Sym, id});
      }
    }
    out.insert(std::move(sub));
  }
  return out;
}

}  // namespace permhom
