#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "core/nice_family.hpp"
#include "core/point_set.hpp"

namespace permhom {

/// Per-member orders of type omega built coherently: member b is enumerated by
/// dovetailing the pieces A_b int D_i (D_i = A_{I[b][i]} minus the earlier
/// witnesses), pulling each piece in the rank order of its witness member, so
/// that ranks agree piecewise across the family. Points of A_b outside every
/// witness form one extra piece taken in canonical ambient order; members with
/// no witnesses are enumerated purely in that ambient order.
class CoherentOrders {
public:
  explicit CoherentOrders(NiceFamily fam);

  const NiceFamily& family() const { return fam_; }

  /// x with rank_b(x) = r; throws std::out_of_range past a finite member.
  Ordinal element_of_rank(std::size_t b, std::uint64_t r);
  /// Inverse of element_of_rank; x must lie in A_b. cap bounds the search.
  std::uint64_t rank_of(std::size_t b, const Ordinal& x, std::uint64_t cap = 1u << 20);
  /// First n elements of A_b in rank order.
  std::vector<Ordinal> order_prefix(std::size_t b, std::size_t n);

  /// Finite partition of A_a int A_b on whose pieces the two rank orders
  /// agree; empty when the members are disjoint.
  std::vector<IntervalSet> partition_pair(std::size_t a, std::size_t b);

  /// The piece list (pieces A_b int D_i in witness order, leftover last) that
  /// drives member b's dovetail.
  const std::vector<IntervalSet>& pieces(std::size_t b);

private:
  struct Stream {
    std::vector<IntervalSet> pieces;        // per witness, then leftover
    std::vector<std::size_t> src;           // witness member per piece; SIZE_MAX = leftover
    std::vector<std::vector<Ordinal>> hits; // piece elements found so far, in source rank order
    std::vector<std::uint64_t> scanned;     // source ranks consumed per piece
    std::unique_ptr<CanonicalEnum> ambient; // drives the leftover piece
    std::vector<Ordinal> out;               // rank -> element
    std::map<Ordinal, std::uint64_t> rank;
    std::uint64_t diag = 0, diag_n = 0;     // dovetail position: diagonal, then n
    bool exhausted = false;
  };

  void init_stream_(std::size_t b);
  bool emit_next_(std::size_t b);  // false when the member is exhausted
  /// n-th element of piece p of member b (in its source order); nullopt if the
  /// piece has fewer elements.
  std::optional<Ordinal> piece_nth_(std::size_t b, std::size_t p, std::uint64_t n);

  NiceFamily fam_;
  std::vector<Stream> streams_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<IntervalSet>> part_cache_;
};

}  // namespace permhom
