#include "pcac/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace pcac {

SequenceSet::SequenceSet(std::size_t n, std::size_t k, std::size_t delta, std::vector<BinarySequence> sequences)
    : n_(n), k_(k), delta_(delta), sequences_(std::move(sequences)) {
  if (delta_ >= n_) throw std::invalid_argument("shift bound must be below the period");
  std::set<std::string> seen;
  for (const auto& x : sequences_) {
    if (x.period() != n_) throw std::invalid_argument("sequence period differs from the set period");
    if (x.weight() != k_) {
      throw std::invalid_argument("sequence " + x.to_string() + " has weight " + std::to_string(x.weight()) +
                                  ", expected " + std::to_string(k_));
    }
    if (!seen.insert(x.to_string()).second) throw std::invalid_argument("sequence set contains a duplicate");
  }
}

PcacCheck is_pcac(std::span<const BinarySequence> code, std::size_t delta) {
  const std::size_t n_seq = code.size();
  for (std::size_t i = 0; i < n_seq; ++i) {
    for (std::size_t j = 0; j < n_seq; ++j) {
      if (i == j) continue;
      if (hamming_xcorr_bounded(code[i], code[j], delta) <= 1) continue;
      // first shift where the overlap exceeds one
      const std::size_t n = code[i].period();
      const auto support = characteristic_set(code[j]);
      for (std::size_t tau = 0; tau <= delta; ++tau) {
        std::size_t hits = 0;
        for (residue_t e : support.elements()) hits += code[i][(e + tau) % n] ? 1 : 0;
        if (hits > 1) return {false, PcacWitness{i, j, tau, hits}};
      }
    }
  }
  return {true, std::nullopt};
}

PcacCheck is_pcac(const SequenceSet& code) { return is_pcac(code.sequences(), code.delta()); }

namespace {

using RowRefs = std::span<const BinarySequence* const>;

bool private_slot_test(RowRefs rows) {
  const std::size_t words = rows.front()->words().size();
  std::vector<bool> owns(rows.size(), false);
  std::size_t remaining = rows.size();
  for (std::size_t w = 0; w < words && remaining > 0; ++w) {
    std::uint64_t ones = 0, twos = 0;
    for (const auto* r : rows) {
      const std::uint64_t bits = r->words()[w];
      twos |= ones & bits;
      ones |= bits;
    }
    const std::uint64_t unique = ones & ~twos;
    if (unique == 0) continue;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!owns[i] && (rows[i]->words()[w] & unique) != 0) {
        owns[i] = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

bool submatrix_search(RowRefs rows, std::size_t row, std::vector<std::size_t>& columns) {
  if (row == rows.size()) {
    // columns[i] carries a 1 in row i only: the k x k submatrix is a permutation matrix
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows.size(); ++j) {
        if ((*rows[j])[columns[i]] != (i == j)) return false;
      }
    }
    return true;
  }
  const std::size_t n = rows[row]->period();
  for (std::size_t c = 0; c < n; ++c) {
    if (!(*rows[row])[c]) continue;
    if (std::find(columns.begin(), columns.end(), c) != columns.end()) continue;
    bool alone = true;
    for (std::size_t j = 0; j < rows.size() && alone; ++j) alone = (j == row) || !(*rows[j])[c];
    if (!alone) continue;
    columns.push_back(c);
    if (submatrix_search(rows, row + 1, columns)) return true;
    columns.pop_back();
  }
  return false;
}

bool direct_test(RowRefs rows) {
  std::vector<std::size_t> columns;
  return submatrix_search(rows, 0, columns);
}

void check_ui_args(std::span<const BinarySequence> code, std::size_t k, std::size_t delta) {
  if (code.empty()) throw std::invalid_argument("empty sequence set");
  if (k == 0 || k > code.size()) throw std::invalid_argument("need 1 <= k <= N");
  for (const auto& x : code) {
    if (x.period() != code.front().period()) throw std::invalid_argument("sequences have different periods");
  }
  if (delta >= code.front().period()) throw std::invalid_argument("shift bound must be below the period");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

bool has_permutation_submatrix(std::span<const BinarySequence> rows) {
  std::vector<const BinarySequence*> refs;
  for (const auto& r : rows) refs.push_back(&r);
  return private_slot_test(refs);
}

bool has_permutation_submatrix_direct(std::span<const BinarySequence> rows) {
  std::vector<const BinarySequence*> refs;
  for (const auto& r : rows) refs.push_back(&r);
  return direct_test(refs);
}

std::uint64_t ui_configuration_count(std::size_t n_sequences, std::size_t k, std::size_t delta) {
  if (k > n_sequences) return 0;
  // C(N, k) built incrementally; each partial value is itself a binomial
  std::uint64_t subsets = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n_sequences - k + i;
    const std::uint64_t g = std::gcd(subsets, static_cast<std::uint64_t>(i));
    subsets = saturating_mul(subsets / g, num / (i / g));
    if (subsets == std::numeric_limits<std::uint64_t>::max()) return subsets;
  }
  std::uint64_t total = subsets;
  for (std::size_t i = 0; i < k; ++i) total = saturating_mul(total, delta + 1);
  return total;
}

UiResult is_ui(std::span<const BinarySequence> code, std::size_t k, std::size_t delta, std::uint64_t budget,
               UiMethod method) {
  check_ui_args(code, k, delta);
  UiResult result;
  if (ui_configuration_count(code.size(), k, delta) > budget) return result;

  std::vector<std::vector<BinarySequence>> shifted(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (std::size_t tau = 0; tau <= delta; ++tau) shifted[i].push_back(cyclic_shift(code[i], tau));
  }
  const auto test = method == UiMethod::PrivateSlot ? private_slot_test : direct_test;

  std::vector<std::size_t> users(k);
  std::iota(users.begin(), users.end(), 0);
  std::vector<const BinarySequence*> rows(k);
  std::vector<std::size_t> shifts(k);
  while (true) {
    std::fill(shifts.begin(), shifts.end(), 0);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) rows[i] = &shifted[users[i]][shifts[i]];
      ++result.configurations;
      if (!test(rows)) {
        result.status = UiStatus::Violated;
        result.witness = UiWitness{users, shifts};
        return result;
      }
      std::size_t pos = k;
      while (pos > 0 && shifts[pos - 1] == delta) shifts[--pos] = 0;
      if (pos == 0) break;
      ++shifts[pos - 1];
    }
    // next k-subset in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && users[pos - 1] == code.size() - k + pos - 1) --pos;
    if (pos == 0) break;
    ++users[pos - 1];
    for (std::size_t i = pos; i < k; ++i) users[i] = users[i - 1] + 1;
  }
  result.status = UiStatus::Verified;
  return result;
}

UiResult is_ui_sampled(std::span<const BinarySequence> code, std::size_t k, std::size_t delta,
                       std::uint64_t samples, std::uint64_t seed) {
  check_ui_args(code, k, delta);
  std::mt19937_64 rng(seed);
  UiResult result;
  result.sampled = true;
  std::vector<std::size_t> pool(code.size());
  std::uniform_int_distribution<std::size_t> shift_dist(0, delta);
  std::vector<BinarySequence> rows;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<std::size_t> users(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(users.begin(), users.end());
    std::vector<std::size_t> shifts(k);
    rows.clear();
    for (std::size_t i = 0; i < k; ++i) {
      shifts[i] = shift_dist(rng);
      rows.push_back(cyclic_shift(code[users[i]], shifts[i]));
    }
    ++result.configurations;
    if (!has_permutation_submatrix(rows)) {
      result.status = UiStatus::Violated;
      result.witness = UiWitness{users, shifts};
      return result;
    }
  }
  result.status = UiStatus::Verified;
  return result;
}

std::size_t delta_collapse_threshold(std::size_t n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  return n / 2;
}

std::uint64_t exact_m_weight2(std::size_t n, std::size_t delta) {
  if (n < 3) throw std::invalid_argument("need n >= 3");
  if (delta >= n) throw std::invalid_argument("shift bound must be below the period");
  const std::uint64_t translates = n / (delta + 1);
  if (n % 2 == 1 && 2 * delta + 3 <= n) return (n - 1) / 2 * translates;
  if (n % 2 == 0 && 2 * delta + 2 <= n) return (n / 2 - 1) * translates + n / (2 * delta + 2);
  return n / 2;
}

std::uint64_t translate_count(std::size_t n, double delta) {
  if (delta < 0) throw std::invalid_argument("shift bound must be non-negative");
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(n) / (delta + 1.0)));
}

BoundsReport bounds_weight3(std::size_t n, double delta) {
  if (n < 7) throw std::invalid_argument("weight-3 bounds need n >= 7");
  if (delta < 0 || delta >= static_cast<double>(n / 2)) {
    throw std::invalid_argument("weight-3 bounds need delta < floor(n/2); larger shifts collapse to M(n,3)");
  }
  BoundsReport r;
  r.n = n;
  r.k = 3;
  r.delta = delta;
  r.lower = (n - 1) / 6 * translate_count(n, delta);
  const double nn = static_cast<double>(n);
  const double u = nn * (nn - 1) / (6 * (delta + 1)) + (2 * std::log(2.0) - 1) / 3 * nn + nn / (3 * (delta + 1));
  r.upper_real = u;
  r.upper = static_cast<std::uint64_t>(std::ceil(u)) - 1;
  return r;
}

BoundsReport bounds_weight2(std::size_t n, std::size_t delta) {
  BoundsReport r;
  r.n = n;
  r.k = 2;
  r.delta = static_cast<double>(delta);
  r.exact = exact_m_weight2(n, delta);
  r.lower = *r.exact;
  r.upper = *r.exact;
  return r;
}

}  // namespace pcac
