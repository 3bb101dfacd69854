#pragma once

// Binary periodic sequences, cyclic shifts, characteristic sets and
// Hamming cross-correlation restricted to a bounded shift window.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcac {

using residue_t = std::uint32_t;

/// A 0/1 sequence of fixed period n, packed 64 bits per word.
/// Bit i of the sequence is bit (i % 64) of word (i / 64); bits past the
/// period are always zero.
class BinarySequence {
 public:
  explicit BinarySequence(std::size_t period);

  /// Parses an n-character string of '0'/'1', index 0 leftmost.
  static BinarySequence from_string(std::string_view bits);

  /// Sequence of period n with ones exactly at `positions` (each < n).
  static BinarySequence from_positions(std::size_t n, std::span<const residue_t> positions);

  std::size_t period() const noexcept { return period_; }
  std::size_t weight() const noexcept;
  bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  /// Copy of this sequence with bit i set to `value`.
  BinarySequence with_bit(std::size_t i, bool value) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// 64 consecutive bits read cyclically from `pos`: bit j of the result is
  /// X((pos + j) mod n).
  std::uint64_t window(std::size_t pos) const noexcept;

  std::string to_string() const;

  friend bool operator==(const BinarySequence&, const BinarySequence&) = default;
  friend auto operator<=>(const BinarySequence& a, const BinarySequence& b) {
    if (auto c = a.period_ <=> b.period_; c != 0) return c;
    return a.to_string() <=> b.to_string();
  }

 private:
  friend BinarySequence cyclic_shift(const BinarySequence& x, std::size_t tau);
  void set_bit(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t period_;
  std::vector<std::uint64_t> words_;
};

/// Applies the cyclic shift operator tau times: result(i) = X((i - tau) mod n).
BinarySequence cyclic_shift(const BinarySequence& x, std::size_t tau);

/// Sorted, duplicate-free subset of Z_n.
class CharacteristicSet {
 public:
  CharacteristicSet() = default;
  /// Throws std::invalid_argument on an element >= modulus or a duplicate.
  CharacteristicSet(std::size_t modulus, std::vector<residue_t> elements);

  std::size_t modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::span<const residue_t> elements() const noexcept { return elements_; }
  bool contains(residue_t x) const noexcept;

  /// A + tau (mod n).
  CharacteristicSet translated(std::size_t tau) const;

  friend bool operator==(const CharacteristicSet&, const CharacteristicSet&) = default;
  friend auto operator<=>(const CharacteristicSet&, const CharacteristicSet&) = default;

 private:
  std::size_t modulus_ = 0;
  std::vector<residue_t> elements_;
};

CharacteristicSet characteristic_set(const BinarySequence& x);

/// Inverse of characteristic_set. When `expected_weight` is given the set
/// size must match it.
BinarySequence from_characteristic_set(const CharacteristicSet& s,
                                       std::optional<std::size_t> expected_weight = {});
BinarySequence from_characteristic_set(std::span<const residue_t> elements, std::size_t n,
                                       std::optional<std::size_t> expected_weight = {});

struct CorrelationPeak {
  std::size_t value = 0;
  std::size_t shift = 0;  // smallest tau attaining `value`
};

/// H_delta(X, Y) = max over 0 <= tau <= delta of sum_i X(i) * (R^tau Y)(i).
/// Not symmetric in (X, Y) when delta < n - 1. Throws on period mismatch or
/// delta >= n.
std::size_t hamming_xcorr_bounded(const BinarySequence& x, const BinarySequence& y,
                                  std::size_t delta);

/// Same maximum, together with the first shift that attains it.
CorrelationPeak hamming_xcorr_peak(const BinarySequence& x, const BinarySequence& y,
                                   std::size_t delta);

/// Full cross-correlation (delta = n - 1).
std::size_t hamming_xcorr(const BinarySequence& x, const BinarySequence& y);

namespace detail {
// The two evaluation strategies behind hamming_xcorr_peak; both are exposed so
// the test suite can check that they agree.
CorrelationPeak xcorr_by_sets(const BinarySequence& x, const BinarySequence& y,
                              std::size_t delta);
CorrelationPeak xcorr_by_words(const BinarySequence& x, const BinarySequence& y,
                               std::size_t delta);
}  // namespace detail

}  // namespace pcac
