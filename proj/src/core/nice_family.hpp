#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core/interval_set.hpp"

namespace permhom {

/// Indexed family A_0..A_{m-1} of interval sets with overlap witnesses:
/// I[b] lists the earlier indices whose members cover all intersections with
/// A_b, J[{a,b}] the finite sub-list witnessing A_a int A_b, and zeta[{a,b}]
/// the single-index strong witness (A_a int A_b = A_zeta int A_b) when known.
struct NiceFamily {
  std::vector<IntervalSet> members;
  std::vector<std::vector<std::size_t>> I;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> J;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> zeta;

  std::size_t size() const { return members.size(); }
  std::string to_json() const;
  static NiceFamily from_json(const std::string& text);
};

struct FamilyReport {
  bool ok = true;               // the containment condition holds for all pairs
  bool strong_ok = true;        // every present zeta witness checks out
  bool directed = true;         // finite-cover proxy: pairwise unions dominated
  std::vector<std::string> violations;
};

/// Exact interval-set verification of the witness containments:
/// A_a int A_b subset of the union of A_z over z in J[{a,b}], for all a < b,
/// plus the strong equalities where zeta is present and a pairwise
/// directedness proxy for ambient cofinality.
FamilyReport check_n2(const NiceFamily& fam);

/// A finite catalog of clopen-style interval sets inside [0, w^k * (depth+1)),
/// closed under pairwise intersection and ordered so that strict subsets come
/// first. Witnesses are the intersection indices themselves, so the strong
/// form holds by construction. depth = 0 gives the single member [0, w^k).
NiceFamily clopen_family(std::uint32_t k, std::uint32_t depth);

}  // namespace permhom
