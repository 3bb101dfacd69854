#pragma once

// Builders for UI sequence sets (TDMA, GF polynomials, DDS-based PCAC) and
// the period comparison between them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcac/codes.hpp"
#include "pcac/diffsets.hpp"

namespace pcac {

/// k weight-1 sequences of period k(delta+1); sequence i has its 1 at i(delta+1).
SequenceSet tdma_ui(std::size_t k, std::size_t delta);

/// q^m sequences of period (delta+1) q^2 and weight q, one per polynomial f
/// of degree < m over GF(q). Polynomial index j = sum code(c_i) q^i, where
/// code() is the base-p coefficient encoding of field elements. Frame i
/// (slot block of q) carries its 1 at code(f(i)); every slot is then widened
/// to delta+1 slots with the 1 first.
SequenceSet gf_ui(std::uint32_t q, std::size_t m, std::size_t delta);

/// Largest k with q >= (k-1)(m-1)+1, the active-user count gf_ui guarantees.
std::size_t gf_max_active(std::uint32_t q, std::size_t m);

/// dds_to_packing then packing_to_code; r floor(n/(delta+1)) sequences of
/// weight k. Throws std::logic_error if the result fails is_pcac.
SequenceSet pcac_ui(const DisjointDifferenceSet& dds, std::size_t delta);

struct ComparisonRow {
  std::string approach;
  std::optional<std::uint64_t> period;  // nullopt: infeasible within the search limits
  std::uint64_t users = 0;              // potential users the row provides
  std::size_t active = 0;
  std::size_t delta = 0;
  std::string parameters;
  bool verified = false;  // a set with these parameters was built and checked
};

struct CompareOptions {
  std::uint32_t max_q = 1024;
  std::size_t max_m = 6;
  /// Node budget for df_search backing the pcac-dds row; 0 skips the search.
  std::uint64_t search_budget = 1'000'000;
  /// Build and verify rows whose code has at most this many sequences
  /// times period; 0 disables construction.
  std::uint64_t construct_limit = 200'000;
  std::uint64_t ui_budget = kDefaultUiBudget;
};

/// Minimal period per approach for n_target potential users, k active users
/// and shift bound delta. Rows: pcac-dds (smallest n admitting an (n,k,r)-DDS
/// by n >= r k(k-1)+1 with r floor(n/(delta+1)) >= n_target), pcac-singer and
/// pcac-bose (the two DDS families with r = 1 or r a prime above q, resp. at
/// least q), gf, and tdma (one dedicated slot per potential user,
/// n_target (delta+1)). Ties go to the smallest q, then m, then r.
std::vector<ComparisonRow> compare_periods(std::uint64_t n_target, std::size_t k, std::size_t delta,
                                           const CompareOptions& options = {});

}  // namespace pcac
