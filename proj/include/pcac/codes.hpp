#pragma once

// PCAC and UI verification, and the closed-form size results for codes of
// weight 2 and 3.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcac/seqcore.hpp"

namespace pcac {

/// N distinct sequences of common period n and weight k, tagged with the
/// shift bound delta they are meant to tolerate.
class SequenceSet {
 public:
  SequenceSet(std::size_t n, std::size_t k, std::size_t delta, std::vector<BinarySequence> sequences);

  std::size_t period() const noexcept { return n_; }
  std::size_t weight() const noexcept { return k_; }
  std::size_t delta() const noexcept { return delta_; }
  std::size_t size() const noexcept { return sequences_.size(); }
  std::span<const BinarySequence> sequences() const noexcept { return sequences_; }
  const BinarySequence& operator[](std::size_t i) const { return sequences_[i]; }

  friend bool operator==(const SequenceSet&, const SequenceSet&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t delta_;
  std::vector<BinarySequence> sequences_;
};

struct PcacWitness {
  std::size_t x = 0;      // index of X
  std::size_t y = 0;      // index of Y, the shifted sequence
  std::size_t shift = 0;  // tau
  std::size_t count = 0;  // |I_X n (I_Y + tau)|
};

struct PcacCheck {
  bool valid = false;
  std::optional<PcacWitness> witness;  // lexicographically smallest (x, y, shift)
  explicit operator bool() const noexcept { return valid; }
};

/// H_delta(X, Y) <= 1 for every ordered pair of distinct positions (X, Y).
/// Sequences only need a common period; weights are not checked here.
PcacCheck is_pcac(std::span<const BinarySequence> code, std::size_t delta);
PcacCheck is_pcac(const SequenceSet& code);

enum class UiStatus { Verified, Violated, Unverified };

struct UiWitness {
  std::vector<std::size_t> users;
  std::vector<std::size_t> shifts;
};

struct UiResult {
  UiStatus status = UiStatus::Unverified;
  std::uint64_t configurations = 0;  // stacked matrices examined
  bool sampled = false;
  std::optional<UiWitness> witness;
};

enum class UiMethod { PrivateSlot, Submatrix };

inline constexpr std::uint64_t kDefaultUiBudget = 10'000'000;

/// Exhaustive user-irrepressibility check: every k-subset of the sequences,
/// every shift tuple in [0, delta]^k. Returns Unverified, without examining
/// anything, when C(N, k) (delta+1)^k exceeds the budget.
UiResult is_ui(std::span<const BinarySequence> code, std::size_t k, std::size_t delta,
               std::uint64_t budget = kDefaultUiBudget, UiMethod method = UiMethod::PrivateSlot);

/// Randomized variant: `samples` uniformly drawn (subset, shift tuple) pairs.
/// A pass is reported as Verified with sampled = true.
UiResult is_ui_sampled(std::span<const BinarySequence> code, std::size_t k, std::size_t delta,
                       std::uint64_t samples, std::uint64_t seed);

/// Number of configurations an exhaustive is_ui would examine, saturating.
std::uint64_t ui_configuration_count(std::size_t n_sequences, std::size_t k, std::size_t delta);

/// Whether the stacked rows contain a k x k permutation submatrix.
/// Private-slot form: every row owns a column where it alone is 1.
bool has_permutation_submatrix(std::span<const BinarySequence> rows);
/// Direct form: backtracking over column choices, one per row, checking the
/// chosen k x k submatrix is a permutation matrix.
bool has_permutation_submatrix_direct(std::span<const BinarySequence> rows);

/// floor(n/2); every delta at or above it gives M_delta(n, k) = M(n, k).
std::size_t delta_collapse_threshold(std::size_t n);

/// Exact M_delta(n, 2).
std::uint64_t exact_m_weight2(std::size_t n, std::size_t delta);

struct BoundsReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double delta = 0;
  std::uint64_t lower = 0;
  std::optional<std::uint64_t> upper;  // nullopt means unbounded
  std::optional<std::uint64_t> exact;
  /// Real value of the strict upper expression (weight 3 only).
  std::optional<double> upper_real;
};

/// floor((n-1)/6) floor(n/(delta+1)) <= M_delta(n, 3) < U, reported with
/// upper = largest integer strictly below U. Delta may be real-valued
/// (e.g. sqrt(n)). Requires n >= 7 and delta < floor(n/2).
BoundsReport bounds_weight3(std::size_t n, double delta);

/// Weight-2 report (exact).
BoundsReport bounds_weight2(std::size_t n, std::size_t delta);

/// floor(n / (delta + 1)) for a possibly real-valued delta.
std::uint64_t translate_count(std::size_t n, double delta);

}  // namespace pcac
