#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pcac/seqcore.hpp"

using namespace pcac;

TEST_CASE("string round trip and weight") {
  const std::string bits = "1000110000000000000";
  const auto x = BinarySequence::from_string(bits);
  CHECK(x.period() == 19);
  CHECK(x.weight() == 3);
  CHECK(x.to_string() == bits);
  CHECK(x[0]);
  CHECK_FALSE(x[1]);
  CHECK_THROWS_AS(BinarySequence::from_string("10a1"), std::invalid_argument);
}

TEST_CASE("positions and characteristic sets are inverse") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 5u, 63u, 64u, 65u, 130u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto bits = oracle::random_bits(rng, n, rng() % (n + 1));
      const auto x = BinarySequence::from_string(bits);
      const auto s = characteristic_set(x);
      CHECK(s.modulus() == n);
      CHECK(s.size() == x.weight());
      CHECK(from_characteristic_set(s) == x);
      CHECK(BinarySequence::from_positions(n, s.elements()) == x);
    }
  }
  const CharacteristicSet s(19, {0, 4, 5});
  CHECK_THROWS_AS(from_characteristic_set(s, 4), std::invalid_argument);
}

TEST_CASE("cyclic shift translates the support") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {3u, 19u, 64u, 100u, 129u}) {
    const auto bits = oracle::random_bits(rng, n, n / 3 + 1);
    const auto x = BinarySequence::from_string(bits);
    for (std::size_t tau = 0; tau < n + 3; tau += 1 + n / 7) {
      CHECK(cyclic_shift(x, tau).to_string() == oracle::shift_right(bits, tau % n));
      CHECK(characteristic_set(cyclic_shift(x, tau)) == characteristic_set(x).translated(tau));
    }
  }
}

TEST_CASE("bounded cross-correlation matches the oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 140;
    const auto xb = oracle::random_bits(rng, n, 1 + rng() % n);
    const auto yb = oracle::random_bits(rng, n, 1 + rng() % n);
    const auto x = BinarySequence::from_string(xb);
    const auto y = BinarySequence::from_string(yb);
    const std::size_t delta = rng() % n;
    const auto expected = oracle::xcorr(xb, yb, delta);
    CHECK(hamming_xcorr_bounded(x, y, delta) == expected);
    const auto by_sets = detail::xcorr_by_sets(x, y, delta);
    const auto by_words = detail::xcorr_by_words(x, y, delta);
    CHECK(by_sets.value == expected);
    CHECK(by_words.value == expected);
    CHECK(by_sets.shift == by_words.shift);
    CHECK(oracle::xcorr(xb, oracle::shift_right(yb, by_sets.shift), 0) == expected);
  }
}

TEST_CASE("bounded cross-correlation is not symmetric, the full one is") {
  // X = {0}, Y = {2}: Y reaches X only after shifting by n - 2
  const auto x = BinarySequence::from_string("1000000");
  const auto y = BinarySequence::from_string("0010000");
  CHECK(hamming_xcorr_bounded(x, y, 2) == 0);
  CHECK(hamming_xcorr_bounded(y, x, 2) == 1);
  CHECK(hamming_xcorr(x, y) == hamming_xcorr(y, x));
}

TEST_CASE("cross-correlation is monotone in delta") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    const auto x = BinarySequence::from_string(oracle::random_bits(rng, n, 3));
    const auto y = BinarySequence::from_string(oracle::random_bits(rng, n, 3));
    std::size_t last = 0;
    for (std::size_t delta = 0; delta < n; ++delta) {
      const auto h = hamming_xcorr_bounded(x, y, delta);
      CHECK(h >= last);
      last = h;
    }
    CHECK(last == hamming_xcorr(x, y));
  }
}

TEST_CASE("invalid correlation arguments") {
  const auto x = BinarySequence::from_string("1100");
  const auto y = BinarySequence::from_string("11000");
  CHECK_THROWS_AS(hamming_xcorr_bounded(x, y, 1), std::invalid_argument);
  CHECK_THROWS_AS(hamming_xcorr_bounded(x, x, 4), std::invalid_argument);
  CHECK_THROWS_AS(CharacteristicSet(5, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(CharacteristicSet(5, {5}), std::invalid_argument);
}
