#pragma once

// Exact oracles: maximum (k, delta)-packings of K_n by branch and bound, and
// backtracking search for disjoint difference sets and difference families.
// Both are single-threaded so node counts and witnesses are reproducible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcac/diffsets.hpp"
#include "pcac/seqcore.hpp"

namespace pcac {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct PackingSearchResult {
  std::size_t size = 0;
  std::vector<CharacteristicSet> members;  // a packing of that size
  bool complete = false;                   // false: size is only a lower bound
  std::uint64_t nodes = 0;
  std::size_t root_bound = 0;              // upper bound computed at the root
};

/// Maximum number of k-subsets of Z_n with pairwise edge-disjoint supporting
/// graphs G_delta. Candidates are ordered by (max element, lexicographic).
/// Branches on the coverable edge with the fewest live candidates (one branch
/// per candidate through it, plus one leaving it uncovered) and prunes with
/// edge-count and per-difference-class capacity bounds.
PackingSearchResult max_packing_exact(std::size_t n, std::size_t k, std::size_t delta,
                                      std::uint64_t budget = kDefaultSearchBudget);

enum class SearchStatus { Found, Exhausted, BudgetExceeded };

const char* to_string(SearchStatus s);

struct DfSearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<DisjointDifferenceSet> dds;
  std::uint64_t nodes = 0;
};

/// Backtracking for an (n, k, r)-DDS. Each block is placed through the
/// smallest distance not yet used, translated so that this distance is the
/// pair {0, g}; the rest of the block is chosen in increasing order. Distance
/// n/2 is never used (it would occur twice). When r k(k-1) = n - 1 the result
/// is a difference family. Rejects parameters violating n >= r k(k-1) + 1.
DfSearchResult df_search(std::size_t n, std::size_t k, std::size_t r,
                         std::uint64_t budget = kDefaultSearchBudget);

struct DfEnumeration {
  std::vector<DisjointDifferenceSet> solutions;
  bool complete = false;
  std::uint64_t nodes = 0;
};

/// Every solution reachable by df_search, in search order.
DfEnumeration df_search_all(std::size_t n, std::size_t k, std::size_t r,
                            std::uint64_t budget = kDefaultSearchBudget);

struct Table3Row {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  std::uint64_t value = 0;         // r floor(n / (sqrt(n) + 1))
  std::size_t integer_delta = 0;   // floor(sqrt(n)), the largest admissible integer shift
  std::size_t code_size = 0;       // size of the constructed code, 0 when no DF was found
  bool verified = false;           // the constructed code passed is_pcac
  DfSearchResult search;
};

/// Lower bound on M_{sqrt n}(n, k) from an (n, k)-DF, r = (n-1)/(k(k-1)).
/// Requires k(k-1) | n-1. The DF comes from df_search; the code is built at
/// integer shift floor(sqrt n), which has r floor(n/(floor(sqrt n)+1)) >= value
/// members, and is checked with is_pcac.
Table3Row table3_row(std::size_t n, std::size_t k, std::uint64_t budget = kDefaultSearchBudget);

}  // namespace pcac
