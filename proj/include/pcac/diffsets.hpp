#pragma once

// Disjoint difference sets, difference triangle sets and difference
// families: checkers, classical constructions and the DTS -> DDS bridge.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcac/seqcore.hpp"

namespace pcac {

using Block = std::vector<residue_t>;

/// Two ordered pairs (x, y) inside blocks whose differences x - y coincide.
struct DifferenceCollision {
  residue_t residue = 0;
  std::size_t first_block = 0;
  std::pair<residue_t, residue_t> first;
  std::size_t second_block = 0;
  std::pair<residue_t, residue_t> second;
};

struct DdsCheck {
  bool valid = false;
  /// Smallest repeated residue and the first two pairs producing it.
  std::optional<DifferenceCollision> collision;
  explicit operator bool() const noexcept { return valid; }
};

/// True iff every nonzero residue occurs at most once among the within-block
/// differences. Throws std::invalid_argument on an empty family, an element
/// >= n or a repeated element inside a block.
DdsCheck is_dds(std::span<const Block> blocks, std::size_t n);

/// is_dds plus n = r k(k-1) + 1, i.e. every nonzero residue occurs exactly once.
bool is_difference_family(std::span<const Block> blocks, std::size_t n);

/// Largest r allowed by n >= r k(k-1) + 1.
std::size_t dds_size_necessary(std::size_t n, std::size_t k);

/// An (n, k, r) disjoint difference set; the constructor rejects families
/// that fail is_dds or have blocks of unequal size.
class DisjointDifferenceSet {
 public:
  DisjointDifferenceSet(std::size_t n, std::vector<Block> blocks);

  std::size_t modulus() const noexcept { return n_; }
  std::size_t block_size() const noexcept { return blocks_.front().size(); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::span<const Block> blocks() const noexcept { return blocks_; }
  bool is_difference_family() const;

  friend bool operator==(const DisjointDifferenceSet&, const DisjointDifferenceSet&) = default;

 private:
  std::size_t n_;
  std::vector<Block> blocks_;
};

/// Translates each block so its least element is 0, sorts elements inside
/// blocks, then sorts the blocks lexicographically.
DisjointDifferenceSet canonicalize(const DisjointDifferenceSet& dds);

struct DtsCheck {
  bool valid = false;
  std::optional<std::int64_t> repeated_difference;
  explicit operator bool() const noexcept { return valid; }
};

/// Checks a normalized difference triangle set: every block starts at 0, is
/// strictly increasing, all blocks have the same size, and all positive
/// differences across blocks are distinct.
DtsCheck is_dts(std::span<const std::vector<std::int64_t>> blocks);

class DifferenceTriangleSet {
 public:
  explicit DifferenceTriangleSet(std::vector<std::vector<std::int64_t>> blocks);

  std::size_t block_count() const noexcept { return blocks_.size(); }
  /// Number of nonzero entries per block (the k of an (r, k)-DTS).
  std::size_t order() const noexcept { return blocks_.front().size() - 1; }
  std::int64_t scope() const noexcept { return scope_; }
  std::span<const std::vector<std::int64_t>> blocks() const noexcept { return blocks_; }

 private:
  std::vector<std::vector<std::int64_t>> blocks_;
  std::int64_t scope_ = 0;
};

/// Pairs (a_i, b_i), b_i - a_i = i, i = 1..r (index i-1 holds pair i) of a
/// Skolem sequence of order r (r = 0, 1 mod 4) or a hooked Skolem sequence
/// (r = 2, 3 mod 4, positions 1..2r-1 and 2r+1).
std::vector<std::pair<std::uint32_t, std::uint32_t>> skolem_pairs(std::size_t r);

/// (r, 2)-DTS with blocks {0, i, b_i + r}; scope 3r or 3r + 1.
DifferenceTriangleSet skolem_dts(std::size_t r);

/// Reads the DTS modulo n. Requires n >= 2 * scope + 1.
DisjointDifferenceSet dts_to_dds(const DifferenceTriangleSet& dts, std::size_t n);

/// Singer perfect difference set: (q^2+q+1, q+1, 1).
DisjointDifferenceSet singer_dds(std::uint32_t q);

/// Bose difference set: (q^2-1, q, 1).
DisjointDifferenceSet bose_dds(std::uint32_t q);

}  // namespace pcac
