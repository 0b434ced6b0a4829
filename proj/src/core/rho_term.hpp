#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/order_iso.hpp"
#include "core/term.hpp"

namespace permhom {

/// Atom of a word over a function family plus canonical order isomorphisms.
/// F atoms name registered permutations of a known base set; Rho atoms carry
/// the iso itself so normalization can fuse and restrict them structurally.
struct FAtom {
  std::string id;
  bool inv = false;
  IntervalSet base;  // the set the named function permutes

  friend bool operator==(const FAtom&, const FAtom&) = default;
};

struct RhoAtom {
  OrderIso iso;
  friend bool operator==(const RhoAtom&, const RhoAtom&) = default;
};

using NAtom = std::variant<FAtom, RhoAtom>;
using NTerm = std::vector<NAtom>;

std::string nterm_str(const NTerm& t);

/// Right-to-left evaluation; F atoms resolve through the context registry.
std::optional<Ordinal> nterm_eval(const NTerm& t, const TermContext& ctx, const Ordinal& alpha);

/// Rewrites t to a term whose evaluation agrees with t's on kappa x kappa:
/// strips leading/trailing iso atoms, fuses adjacent iso chains through the
/// composition law, and restricts each fused iso between two F atoms to the
/// traces of their base sets. Preconditions: every iso atom fixes [0,kappa)
/// pointwise (both sets contain it as an initial segment) and every F base
/// contains [0,kappa).
NTerm kappa_normalize(const NTerm& t, const Ordinal& kappa);

}  // namespace permhom
