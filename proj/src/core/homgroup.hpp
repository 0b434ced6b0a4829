#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "core/coherent_orders.hpp"
#include "core/func.hpp"
#include "core/point_set.hpp"

namespace permhom {

/// A set carrying a type-omega order: element and rank are mutually inverse
/// between the set and an initial segment of the naturals.
struct RankOrder {
  PointSet set;
  std::function<Ordinal(std::uint64_t)> element;
  std::function<std::uint64_t(const Ordinal&)> rank;
  std::string name;
};

/// The naturals in their usual order.
RankOrder natural_order();
/// The coherent order of member b; keeps the orders object alive.
RankOrder member_order(std::shared_ptr<CoherentOrders> co, std::size_t b);

/// A strictly rank-monotone fragment of a permutation: `map` restricted to
/// `domain` is increasing or decreasing w.r.t. the order of family member
/// `member` (or any RankOrder, for the free-standing operations).
struct MonotonePiece {
  PointSet domain;
  bool increasing = true;
  Func map;
  std::size_t member = 0;
  bool is_identity = false;  // identity fragments are monotone for every order
};

/// The unique rank-monotone increasing bijection X -> Y: n-th element of X in
/// rank order maps to the n-th of Y. Partial beyond what the scan caps reach.
Func monotone_match(const PointSet& x, const PointSet& y, const RankOrder& order,
                    std::string name = "match");

struct HomogResult {
  ExtendedPerm g;
  std::vector<MonotonePiece> pieces;  // the 2-piece certificate (c then d)
};

/// g = c u d extended by the identity on [0,lambda): c matches X with Y, d the
/// complements within the ordered set; g[X] = Y on certified prefixes.
HomogResult homog_map(const PointSet& x, const PointSet& y, const RankOrder& order,
                      const Ordinal& lambda);

/// The block witness: b_k the k-th element of B in the ambient rank order,
/// block i = {b_{2^i+j} : j < 2^i}, and y(b_{2^i+j}) = b_{2^{i+1}-j}, so y is
/// decreasing inside each block and increasing across blocks.
struct WitnessY {
  RankOrder order;
  PointSet base;                          // B
  std::function<Ordinal(std::uint64_t)> b;  // k -> b_k
  Func y;

  /// Index map on subscripts: k >= 1 -> the subscript of y(b_k).
  static std::uint64_t block_image(std::uint64_t k);
};

WitnessY y_witness(const PointSet& b, const RankOrder& order);

/// a_i = |{j < 2^i : c(b_{2^i+j}) = y(b_{2^i+j})}| for i < m; for a monotone c
/// at most one block has a_i >= 2.
std::vector<std::uint64_t> block_agreements(const Func& c, const WitnessY& y, std::size_t m);

struct EscapePair {
  Ordinal b, yb;
  std::uint64_t block = 0, j = 0;
};

/// A y-pair with b-subscript >= n_min uncovered by every member of h, found by
/// scanning blocks i with 2^i > |h| ascending (then j ascending), skipping
/// blocks where some member agrees with y twice. Throws std::runtime_error
/// when m_max blocks do not suffice.
EscapePair monotone_escape(const std::vector<Func>& h, const WitnessY& y, std::uint64_t n_min,
                           std::uint64_t m_max);

/// Monotone pieces (w.r.t. member `target`) covering the graph of the word
/// restricted to A_target x A_target; factors[0] applies first. Each factor's
/// piece list must cover that factor's graph wherever the word may pass
/// (include an identity piece for an extended permutation's fixed part).
/// Hand-offs between member orders go through partition_pair, on whose parts
/// consecutive orders agree.
std::vector<MonotonePiece> word_monotone_decompose(
    const std::vector<std::vector<MonotonePiece>>& factors, std::size_t target,
    CoherentOrders& co);

}  // namespace permhom
