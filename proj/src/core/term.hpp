#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/func.hpp"

namespace permhom {

/// One atom of a word: a registered function, its inverse, or the
/// indeterminate x / x^-1.
struct Atom {
  enum class Kind { Sym, SymInv, X, XInv };
  Kind kind = Kind::X;
  std::string id;  // empty for X/XInv

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// A term is a sequence of atoms; the empty term denotes the identity.
/// Evaluation applies atoms right to left.
using Term = std::vector<Atom>;

std::string term_str(const Term& t);
Term term_parse(const std::string& s);  // "f3.x.f1^-1.x^-1"; "" or "e" = empty term

/// The registry the Sym atoms refer to.
struct TermContext {
  std::map<std::string, Func> registry;

  const Func& lookup(const std::string& id) const;
  bool has(const std::string& id) const { return registry.count(id) > 0; }
};

/// t[g](alpha): substitutes g for x, g^-1 for x^-1; nullopt when any step is
/// undefined. Throws std::invalid_argument on an unregistered id.
std::optional<Ordinal> term_eval(const Term& t, const Func& g, const Ordinal& alpha,
                                 const TermContext& ctx);
/// Inverse evaluation: t[g]^-1(beta).
std::optional<Ordinal> term_eval_inv(const Term& t, const Func& g, const Ordinal& beta,
                                     const TermContext& ctx);

/// Closure under subsequences, including the empty term. Idempotent.
std::set<Term> subterm_closure(const std::set<Term>& h, std::size_t max_len = 10);

/// True iff some t in H has t[g](alpha) = alpha_star.
bool graph_member(const Ordinal& alpha, const Ordinal& alpha_star, const std::set<Term>& h,
                  const Func& g, const TermContext& ctx);

struct EscapeResult {
  Ordinal alpha;
  Ordinal y_alpha;
  std::size_t scanned = 0;
};

/// Scans dom(y) in enumeration order for a point alpha >= n with
/// <alpha, y(alpha)> not in the union of H[g]; at most `budget` candidates.
/// nullopt when the budget is exhausted.
std::optional<EscapeResult> escape_search(const Func& y, const PointSet& ydom,
                                          const std::set<Term>& h, const Func& g,
                                          const TermContext& ctx, const Ordinal& n,
                                          std::size_t budget);

/// All subsequences of a word over extended generators, as terms over the
/// un-extended generators. word entries are (registered id, exponent +-1).
std::set<Term> subsequence_cover(const std::vector<std::pair<std::string, int>>& word);

}  // namespace permhom
