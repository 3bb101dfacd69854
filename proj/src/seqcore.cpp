#include "pcac/seqcore.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace pcac {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::uint64_t low_mask(std::size_t len) {
  return len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
}

}  // namespace

BinarySequence::BinarySequence(std::size_t period) : period_(period), words_(word_count(period), 0) {
  if (period == 0) throw std::invalid_argument("sequence period must be positive");
}

BinarySequence BinarySequence::from_string(std::string_view bits) {
  BinarySequence x(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      x.set_bit(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("sequence string may only contain '0' and '1'");
    }
  }
  return x;
}

BinarySequence BinarySequence::from_positions(std::size_t n, std::span<const residue_t> positions) {
  BinarySequence x(n);
  for (residue_t p : positions) {
    if (p >= n) throw std::invalid_argument("position " + std::to_string(p) + " outside Z_" + std::to_string(n));
    x.set_bit(p);
  }
  return x;
}

std::size_t BinarySequence::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

BinarySequence BinarySequence::with_bit(std::size_t i, bool value) const {
  if (i >= period_) throw std::out_of_range("bit index past the period");
  BinarySequence copy = *this;
  const auto mask = std::uint64_t{1} << (i & 63);
  if (value) {
    copy.words_[i >> 6] |= mask;
  } else {
    copy.words_[i >> 6] &= ~mask;
  }
  return copy;
}

std::uint64_t BinarySequence::window(std::size_t pos) const noexcept {
  // read `len` (<= 64) bits starting at p, with p + len <= period
  auto read = [this](std::size_t p, std::size_t len) {
    const std::size_t w = p >> 6;
    const std::size_t off = p & 63;
    std::uint64_t v = words_[w] >> off;
    if (off != 0 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
    return v & low_mask(len);
  };
  std::uint64_t result = 0;
  std::size_t filled = 0;
  std::size_t p = pos % period_;
  while (filled < 64) {
    const std::size_t len = std::min<std::size_t>(64 - filled, period_ - p);
    result |= read(p, len) << filled;
    filled += len;
    p += len;
    if (p == period_) p = 0;
  }
  return result;
}

std::string BinarySequence::to_string() const {
  std::string s(period_, '0');
  for (std::size_t i = 0; i < period_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

BinarySequence cyclic_shift(const BinarySequence& x, std::size_t tau) {
  const std::size_t n = x.period();
  tau %= n;
  BinarySequence out(n);
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    const std::size_t start = (64 * w + n - tau) % n;
    const std::size_t valid = std::min<std::size_t>(64, n - 64 * w);
    out.words_[w] = x.window(start) & low_mask(valid);
  }
  return out;
}

CharacteristicSet::CharacteristicSet(std::size_t modulus, std::vector<residue_t> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
  if (modulus_ == 0) throw std::invalid_argument("modulus must be positive");
  std::sort(elements_.begin(), elements_.end());
  if (!elements_.empty() && elements_.back() >= modulus_) {
    throw std::invalid_argument("element " + std::to_string(elements_.back()) + " outside Z_" +
                                std::to_string(modulus_));
  }
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw std::invalid_argument("characteristic set has a repeated element");
  }
}

bool CharacteristicSet::contains(residue_t x) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

CharacteristicSet CharacteristicSet::translated(std::size_t tau) const {
  std::vector<residue_t> moved;
  moved.reserve(elements_.size());
  tau %= modulus_;
  for (residue_t e : elements_) moved.push_back(static_cast<residue_t>((e + tau) % modulus_));
  return CharacteristicSet(modulus_, std::move(moved));
}

CharacteristicSet characteristic_set(const BinarySequence& x) {
  std::vector<residue_t> elems;
  for (std::size_t i = 0; i < x.period(); ++i) {
    if (x[i]) elems.push_back(static_cast<residue_t>(i));
  }
  return CharacteristicSet(x.period(), std::move(elems));
}

BinarySequence from_characteristic_set(const CharacteristicSet& s,
                                       std::optional<std::size_t> expected_weight) {
  return from_characteristic_set(s.elements(), s.modulus(), expected_weight);
}

BinarySequence from_characteristic_set(std::span<const residue_t> elements, std::size_t n,
                                       std::optional<std::size_t> expected_weight) {
  BinarySequence x = BinarySequence::from_positions(n, elements);
  if (expected_weight && x.weight() != *expected_weight) {
    throw std::invalid_argument("characteristic set has " + std::to_string(x.weight()) +
                                " distinct elements, expected " + std::to_string(*expected_weight));
  }
  return x;
}

namespace {

void check_xcorr_args(const BinarySequence& x, const BinarySequence& y, std::size_t delta) {
  if (x.period() != y.period()) throw std::invalid_argument("sequences have different periods");
  if (delta >= x.period()) {
    throw std::invalid_argument("shift bound " + std::to_string(delta) + " must be below the period " +
                                std::to_string(x.period()));
  }
}

}  // namespace

namespace detail {

CorrelationPeak xcorr_by_sets(const BinarySequence& x, const BinarySequence& y, std::size_t delta) {
  check_xcorr_args(x, y, delta);
  const std::size_t n = x.period();
  const auto support = characteristic_set(y);
  CorrelationPeak best;
  for (std::size_t tau = 0; tau <= delta; ++tau) {
    std::size_t hits = 0;
    for (residue_t e : support.elements()) {
      if (x[(e + tau) % n]) ++hits;
    }
    if (hits > best.value) best = {hits, tau};
  }
  return best;
}

CorrelationPeak xcorr_by_words(const BinarySequence& x, const BinarySequence& y, std::size_t delta) {
  check_xcorr_args(x, y, delta);
  const std::size_t n = x.period();
  const auto xw = x.words();
  CorrelationPeak best;
  for (std::size_t tau = 0; tau <= delta; ++tau) {
    std::size_t hits = 0;
    for (std::size_t w = 0; w < xw.size(); ++w) {
      // (R^tau Y)(i) = Y(i - tau); bits of x past the period are zero
      hits += static_cast<std::size_t>(std::popcount(xw[w] & y.window((64 * w + n - tau) % n)));
    }
    if (hits > best.value) best = {hits, tau};
  }
  return best;
}

}  // namespace detail

CorrelationPeak hamming_xcorr_peak(const BinarySequence& x, const BinarySequence& y, std::size_t delta) {
  if (y.weight() * 64 < y.period()) return detail::xcorr_by_sets(x, y, delta);
  return detail::xcorr_by_words(x, y, delta);
}

std::size_t hamming_xcorr_bounded(const BinarySequence& x, const BinarySequence& y, std::size_t delta) {
  return hamming_xcorr_peak(x, y, delta).value;
}

std::size_t hamming_xcorr(const BinarySequence& x, const BinarySequence& y) {
  return hamming_xcorr_bounded(x, y, x.period() - 1);
}

}  // namespace pcac
