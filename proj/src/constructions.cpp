#include "pcac/constructions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "pcac/field.hpp"
#include "pcac/packing.hpp"
#include "pcac/search.hpp"

namespace pcac {

SequenceSet tdma_ui(std::size_t k, std::size_t delta) {
  if (k == 0) throw std::invalid_argument("need k >= 1");
  const std::size_t n = k * (delta + 1);
  std::vector<BinarySequence> seqs;
  for (std::size_t i = 0; i < k; ++i) {
    const residue_t slot = static_cast<residue_t>(i * (delta + 1));
    seqs.push_back(BinarySequence::from_positions(n, std::span<const residue_t>(&slot, 1)));
  }
  return SequenceSet(n, 1, delta, std::move(seqs));
}

std::size_t gf_max_active(std::uint32_t q, std::size_t m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  return (q - 1) / (m - 1) + 1;
}

SequenceSet gf_ui(std::uint32_t q, std::size_t m, std::size_t delta) {
  if (m < 2) throw std::invalid_argument("polynomial degree bound m must be at least 2");
  const auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    count *= q;
    if (count > (std::uint64_t{1} << 20)) throw std::invalid_argument("q^m too large to materialize");
  }
  const FiniteField field(pp->prime, pp->exponent);
  const std::size_t n = static_cast<std::size_t>(q) * q * (delta + 1);

  std::vector<BinarySequence> seqs;
  seqs.reserve(count);
  std::vector<FieldElement> coeffs(m);
  std::vector<residue_t> positions(q);
  for (std::uint64_t j = 0; j < count; ++j) {
    std::uint64_t rest = j;
    for (std::size_t i = 0; i < m; ++i) {
      coeffs[i] = field.element(static_cast<std::uint32_t>(rest % q));
      rest /= q;
    }
    for (std::uint32_t i = 0; i < q; ++i) {
      const FieldElement y = polynomial_eval(field, coeffs, field.element(i));
      positions[i] = static_cast<residue_t>((static_cast<std::size_t>(i) * q + y.code) * (delta + 1));
    }
    seqs.push_back(BinarySequence::from_positions(n, positions));
  }
  return SequenceSet(n, q, delta, std::move(seqs));
}

SequenceSet pcac_ui(const DisjointDifferenceSet& dds, std::size_t delta) {
  auto code = packing_to_code(dds_to_packing(dds, delta));
  if (!is_pcac(code, delta)) throw std::logic_error("DDS pipeline produced a code that is not a PCAC");
  return SequenceSet(dds.modulus(), dds.block_size(), delta, std::move(code));
}

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t pcac_users(std::uint64_t r, std::uint64_t period, std::size_t delta) {
  return sat_mul(r, period / (delta + 1));
}

bool affordable(std::uint64_t sequences, std::uint64_t period, const CompareOptions& opt) {
  return opt.construct_limit > 0 && sat_mul(sequences, period) <= opt.construct_limit;
}

ComparisonRow dds_row(std::uint64_t n_target, std::size_t k, std::size_t delta, const CompareOptions& opt) {
  ComparisonRow row{"pcac-dds", std::nullopt, 0, k, delta, "", false};
  const std::uint64_t per_block = k * (k - 1);
  const std::uint64_t limit = std::uint64_t{1} << 40;
  for (std::uint64_t n = std::max<std::uint64_t>(per_block + 1, delta + 1); n < limit; ++n) {
    const std::uint64_t r_max = (n - 1) / per_block;
    const std::uint64_t translates = n / (delta + 1);
    if (translates == 0 || sat_mul(r_max, translates) < n_target) continue;
    const std::uint64_t r = (n_target + translates - 1) / translates;
    row.period = n;
    row.users = r * translates;
    row.parameters = "r=" + std::to_string(r);

    std::optional<DisjointDifferenceSet> dds;
    if (k == 3) {
      const auto dts = skolem_dts(r);
      if (static_cast<std::uint64_t>(2 * dts.scope() + 1) <= n) {
        dds = dts_to_dds(dts, n);
        row.parameters += ";source=skolem";
      }
    }
    if (!dds && opt.search_budget > 0 && n < 100'000) {
      auto found = df_search(n, k, r, opt.search_budget);
      if (found.dds) {
        dds = std::move(found.dds);
        row.parameters += ";source=search";
      }
    }
    if (dds && affordable(row.users, n, opt)) {
      row.verified = pcac_ui(*dds, delta).size() >= n_target;
    }
    if (!dds) row.parameters += ";source=none";
    return row;
  }
  return row;
}

// Smallest admissible r (1, or a prime above / from `prime_floor`) reaching n_target.
std::optional<std::uint64_t> smallest_r(std::uint64_t base, std::uint64_t prime_floor, std::uint64_t n_target,
                                        std::size_t delta) {
  if (base > delta && pcac_users(1, base, delta) >= n_target) return 1;
  for (std::uint64_t r = std::max<std::uint64_t>(prime_floor, 2); r < (std::uint64_t{1} << 32); ++r) {
    if (!is_prime(r)) continue;
    const std::uint64_t n = sat_mul(r, base);
    if (n == kMax) return std::nullopt;
    if (n > delta && pcac_users(r, n, delta) >= n_target) return r;
  }
  return std::nullopt;
}

ComparisonRow family_row(bool singer, std::uint64_t n_target, std::size_t k, std::size_t delta,
                         const CompareOptions& opt) {
  ComparisonRow row{singer ? "pcac-singer" : "pcac-bose", std::nullopt, 0, k, delta, "", false};
  std::uint32_t best_q = 0;
  std::uint64_t best_r = 0;
  for (std::uint32_t q = 2; q <= opt.max_q; ++q) {
    if (!as_prime_power(q)) continue;
    const std::size_t weight = singer ? q + 1 : q;
    if (weight < k) continue;
    const std::uint64_t base = singer ? std::uint64_t{q} * q + q + 1 : std::uint64_t{q} * q - 1;
    if (row.period && base > *row.period) break;
    const auto r = smallest_r(base, singer ? q + 1 : q, n_target, delta);
    if (!r) continue;
    const std::uint64_t n = *r * base;
    if (!row.period || n < *row.period) {
      row.period = n;
      row.users = pcac_users(*r, n, delta);
      best_q = q;
      best_r = *r;
    }
  }
  if (!row.period) return row;
  row.parameters = "q=" + std::to_string(best_q) + ";r=" + std::to_string(best_r);
  // r > 1 needs the recursive family, which is not built here
  const bool small_field = std::uint64_t{best_q} * best_q * (singer ? best_q : 1) <= (std::uint64_t{1} << 20);
  if (best_r == 1 && small_field && affordable(row.users, *row.period, opt)) {
    const auto dds = singer ? singer_dds(best_q) : bose_dds(best_q);
    row.verified = pcac_ui(dds, delta).size() >= n_target;
  }
  return row;
}

ComparisonRow gf_row(std::uint64_t n_target, std::size_t k, std::size_t delta, const CompareOptions& opt) {
  ComparisonRow row{"gf", std::nullopt, 0, k, delta, "", false};
  for (std::uint32_t q = 2; q <= opt.max_q; ++q) {
    if (!as_prime_power(q)) continue;
    std::uint64_t users = q;
    for (std::size_t m = 2; m <= opt.max_m; ++m) {
      users = sat_mul(users, q);
      if (users < n_target || q < (k - 1) * (m - 1) + 1) continue;
      row.period = std::uint64_t{q} * q * (delta + 1);
      row.users = users;
      row.parameters = "q=" + std::to_string(q) + ";m=" + std::to_string(m);
      if (users <= (std::uint64_t{1} << 20) && affordable(users, *row.period, opt) &&
          ui_configuration_count(users, k, delta) <= opt.ui_budget) {
        const auto code = gf_ui(q, m, delta);
        row.verified = is_ui(code.sequences(), k, delta, opt.ui_budget).status == UiStatus::Verified;
      }
      return row;
    }
  }
  return row;
}

ComparisonRow tdma_row(std::uint64_t n_target, std::size_t k, std::size_t delta, const CompareOptions& opt) {
  ComparisonRow row{"tdma", std::nullopt, n_target, k, delta, "", false};
  row.period = sat_mul(n_target, delta + 1);
  row.parameters = "slots_per_user=" + std::to_string(delta + 1) +
                   ";n_times_delta=" + std::to_string(sat_mul(n_target, delta));
  if (affordable(n_target, *row.period, opt) && ui_configuration_count(n_target, k, delta) <= opt.ui_budget) {
    const auto code = tdma_ui(n_target, delta);
    row.verified = is_ui(code.sequences(), k, delta, opt.ui_budget).status == UiStatus::Verified;
  }
  return row;
}

}  // namespace

std::vector<ComparisonRow> compare_periods(std::uint64_t n_target, std::size_t k, std::size_t delta,
                                           const CompareOptions& options) {
  if (k < 2) throw std::invalid_argument("need at least two active users");
  if (n_target < k) throw std::invalid_argument("potential users must be at least the active users");
  return {dds_row(n_target, k, delta, options), family_row(true, n_target, k, delta, options),
          family_row(false, n_target, k, delta, options), gf_row(n_target, k, delta, options),
          tdma_row(n_target, k, delta, options)};
}

}  // namespace pcac
