#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/bfengine.hpp"
#include "core/func.hpp"
#include "core/point_set.hpp"
#include "core/term.hpp"

namespace permhom {

/// A condition p = p0 u p1: p0 a finite partial injection X -> Y, p1 a finite
/// partial injection (Z \ X) -> (Z \ Y).
struct Condition {
  FiniteInjection p0, p1;
  PointSet x, y, z;

  /// Both halves respect their rectangles and the union is injective.
  bool shape_ok() const;
  /// The union p0 u p1 as one finite injection; throws if not injective.
  FiniteInjection merged() const;
  /// True when adding <zeta, eta> keeps the shape.
  bool allows(const Ordinal& zeta, const Ordinal& eta) const;
};

struct DensityResult {
  Condition q;
  Ordinal alpha;
};

/// Meets one density requirement: extends p within its shape so that every
/// t in h evaluates at some alpha >= m with value != r(alpha). h empty gives
/// q = p, alpha = m.
DensityResult density_step(const std::set<Term>& h, const Condition& p, std::uint64_t m,
                           const Func& r, const PointSet& rdom, const TermContext& ctx,
                           std::size_t budget = 10000);

/// One scheduled requirement that was met, with enough state to re-verify it
/// without the construction engines.
struct RequirementRecord {
  std::size_t round = SIZE_MAX;  // SIZE_MAX = the base function r itself
  std::vector<std::string> terms;
  std::uint64_t m = 0;
  std::string alpha, alpha_star;
  std::vector<std::pair<std::string, std::string>> g_pairs;
};

using RequirementLog = std::vector<RequirementRecord>;

/// Re-checks every record: witness >= m, alpha_star = r(alpha), and every
/// term defined at alpha over the recorded graph with value != r(alpha).
bool verify_requirements(const RequirementLog& log, const TermContext& registry, const Func& r,
                         std::vector<std::string>* failures = nullptr);

struct GenericRound {
  PointSet x, y, z;
};

struct GenericResult {
  Func r;                    // the base escape target, built first by schedule
  std::vector<std::shared_ptr<Engine>> engines;
  std::vector<std::string> names;  // g0, g1, ... in the registry
  TermContext registry;
  RequirementLog log;
};

/// The scheduled density-meeting construction: builds r first (no fixed
/// points on the scheduled prefix), then per round builds g_nu as an engine
/// on <Z, X, Y> dovetailing homogeneity tasks with density requirements for
/// term sets over the registry so far; every met requirement is logged.
GenericResult generic_run(const std::vector<GenericRound>& rounds, std::size_t req_budget,
                          const Ordinal& lambda, std::size_t budget = 10000);

/// A factor of a mixed word: either a registered (lazily total) generator or
/// a finite-support permutation acting as the identity off its support.
struct MixedFactor {
  bool is_small = false;
  std::string name;    // registry name when !is_small
  FiniteInjection h;   // the finite permutation when is_small
};

Ordinal mixed_apply(const MixedFactor& f, const TermContext& ctx, const Ordinal& v);
Ordinal mixed_word_apply(const std::vector<MixedFactor>& word, const TermContext& ctx,
                         const Ordinal& v);

/// One finite permutation h whose graph contains (h0 o ... o hk) n (A x A),
/// for finite-support factors hi and a finite interval set A.
FiniteInjection word_restrict_small(const std::vector<FiniteInjection>& word,
                                    const IntervalSet& a);

struct PushDownResult {
  std::vector<MixedFactor> word;     // same g's; each small factor shrunk
  std::vector<IntervalSet> a_chain;  // A_i sets, input side last
};

/// Rewrites a mixed word so that each small factor's support lies inside the
/// finite sub-universe the chain A_i designates, preserving the word's graph
/// on A x A.
PushDownResult word_push_down(const std::vector<MixedFactor>& word, const IntervalSet& a,
                              const TermContext& ctx);

}  // namespace permhom
