#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/func.hpp"
#include "core/order_iso.hpp"
#include "core/point_set.hpp"
#include "core/rho_term.hpp"
#include "core/term.hpp"

namespace permhom {

/// Thrown when a bounded search runs out of budget.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One avoidance-extension problem: extend g by one pair without letting the
/// protected pair <alpha, alpha_star> enter the union of the term graphs.
struct ExtensionProblem {
  std::set<Term> h;  // subterm-closed
  FiniteInjection g;
  Ordinal alpha, alpha_star;
  TermContext ctx;
  /// Evaluation semantics for the indeterminate (e.g. g u id off A).
  std::function<Func(const FiniteInjection&)> as_g;
  /// Candidate eta values in scan order (the ambient set or A).
  PointSet candidates;
  /// Extra shape constraint on a new pair <zeta, eta> (zeta fixed per call).
  std::function<bool(const Ordinal& zeta, const Ordinal& eta)> allowed;

  Func eval_func() const { return as_g ? as_g(g) : g.as_func(); }
};

/// Adds <zeta, eta> (domain side) or <eta, zeta> (range side) with the least
/// allowed eta avoiding {t[g](alpha), t[g]^-1(alpha_star) : t in h} and the
/// injectivity constraint. Throws BudgetExhausted when no eta is found within
/// `budget` candidates.
FiniteInjection extend_step(const ExtensionProblem& prob, bool domain_side, const Ordinal& zeta,
                            std::size_t budget = 10000);

/// Repeated extend_step until every t in h evaluates at alpha (resolving one
/// undefined x / x^-1 atom per round); the protected pair stays avoided.
FiniteInjection make_defined(const ExtensionProblem& prob, std::size_t budget = 10000);

/// One record of engine work, sufficient for independent re-verification.
struct EngineEvent {
  std::size_t step = 0;
  std::string kind;  // "task0-dom" | "task0-ran" | "task1" | "note"
  std::string point;       // task0: the point handled
  std::vector<std::string> terms;    // task1: the term set H
  std::string alpha, alpha_star;     // task1: witness pair (alpha_star = y(alpha))
  std::vector<std::pair<std::string, std::string>> g_pairs;  // g snapshot after the step
};

/// Back-and-forth engine: a growing finite injection g on A with g[B] = C,
/// built on a deterministic schedule. Even steps work through A x {dom, ran};
/// odd steps serve queued witness requests: for a subterm-closed H, pick the
/// least fresh alpha in dom(y) with <alpha, y(alpha)> outside every term
/// graph, then make every t in H defined at alpha. Queries force construction.
class Engine {
public:
  struct Config {
    PointSet a, b, c;     // b, c inside a; complements within a infinite
    Ordinal lambda;
    TermContext f;        // the registry terms may mention
    Func y;               // escape target for witness requests
    PointSet ydom;        // dom(y) in scan order
    std::size_t budget = 10000;
  };

  explicit Engine(Config cfg);

  /// g(x) / g^-1(x); forces schedule steps until x is covered.
  Ordinal query(const Ordinal& x);
  Ordinal query_inv(const Ordinal& x);
  /// k distinct witnesses for H (each new request processes one odd step).
  std::vector<Ordinal> witnesses(const std::set<Term>& h, std::size_t k);

  const FiniteInjection& graph() const { return g_; }
  const std::vector<EngineEvent>& events() const { return events_; }
  const Config& config() const { return cfg_; }

private:
  void run_step_();
  void task0_(std::size_t item);
  void task1_(const std::set<Term>& h);
  ExtensionProblem problem_(const Ordinal& alpha, const Ordinal& alpha_star,
                            const std::set<Term>& h) const;

  Config cfg_;
  FiniteInjection g_;
  std::size_t step_ = 0;
  std::size_t task0_next_ = 0;
  std::deque<std::set<Term>> task1_queue_;
  std::set<Ordinal> used_witnesses_;
  Ordinal witness_floor_;
  std::vector<EngineEvent> events_;
};

/// The engine's partial injection / its identity extension, keeping the
/// engine alive through the closure.
Func engine_func(std::shared_ptr<Engine> e, std::string name = "engine");
ExtendedPerm engine_extended(std::shared_ptr<Engine> e, std::string name = "engine+");

/// A catalog pair: an ambient interval set A containing [0, kappa) and a
/// distinguished B inside it with infinite complement.
struct CatalogPair {
  IntervalSet a;
  PointSet b;
  std::string name;
};

class PairCatalog {
public:
  explicit PairCatalog(Ordinal kappa = Ordinal::omega()) : kappa_(std::move(kappa)) {}

  /// Validates and stores a pair; throws std::invalid_argument when the shape
  /// requirement fails on a certified prefix.
  std::size_t add(IntervalSet a, PointSet b, std::string name = "");
  /// Admits Z inside kappa (infinite and co-infinite on the checked prefix)
  /// as the B of a new pair whose A is the canonical superset [0, kappa*2).
  std::size_t admit(const PointSet& z);

  const std::vector<CatalogPair>& pairs() const { return pairs_; }
  const Ordinal& kappa() const { return kappa_; }

private:
  Ordinal kappa_;
  std::vector<CatalogPair> pairs_;
};

/// Canonical order isos between intersections of catalog ambient sets whose
/// member traces match; these are the extra atoms the pipeline's term sets may
/// mention.
std::vector<OrderIso> trace_isos(const std::vector<IntervalSet>& members, std::size_t max_atoms);

struct WitnessCert {
  std::size_t engine_index = 0;
  std::vector<std::string> terms;
  std::string alpha, alpha_star;
  std::vector<std::pair<std::string, std::string>> g_pairs;
};

struct KeyLemmaResult {
  TermContext registry;                       // f0, f1, ... and s0, s1, ... atoms
  std::vector<std::shared_ptr<Engine>> engines;
  std::vector<std::string> names;             // registry name per catalog pair
  std::vector<IntervalSet> bases;             // A of each pair
  std::vector<OrderIso> s_atoms;
  std::vector<WitnessCert> certs;
};

/// Builds f_alpha for each catalog pair in order: an engine mapping B_alpha
/// onto K inside A_alpha, with witness requests drawn from term sets over the
/// registry built so far plus the trace isos. task_budget bounds the requests
/// served per pair.
KeyLemmaResult key_lemma_build(const PairCatalog& catalog, const PointSet& k, const Func& y,
                               std::size_t task_budget);

struct HomogWord {
  std::vector<std::string> factors;  // registry names, first applied last
  std::size_t via_pair = 0;          // catalog index whose B admitted X
  std::size_t z_pair = 0;            // catalog index of the admitted image set
};

/// A two-factor word of extended registry generators mapping X onto K:
/// f_{<A,B>} sends X into K, and f_{<C,Z>} for Z = image of X finishes the
/// job. Grows the catalog and registry when Z is new. Throws
/// std::invalid_argument when no catalog B contains X on the checked prefix.
HomogWord homog_word(const PointSet& x, PairCatalog& catalog, KeyLemmaResult& built,
                     const PointSet& k, const Func& y, std::size_t task_budget);

struct IntransitiveCert {
  std::vector<NTerm> cover;       // normalized cover terms
  std::vector<std::string> cover_text;
  Ordinal alpha, alpha_star;      // the uncovered y-pair
  std::size_t scanned = 0;
};

/// Covers the word's extended-generator product by plain-generator
/// subsequences, interleaves identity isos on the bases and normalizes through
/// the composition law, then finds a y-pair outside every cover graph.
IntransitiveCert intransitive_cert(const std::vector<std::pair<std::string, int>>& word,
                                   const KeyLemmaResult& built, const Func& y,
                                   const PointSet& ydom, const Ordinal& kappa, const Ordinal& n,
                                   std::size_t budget);

}  // namespace permhom
