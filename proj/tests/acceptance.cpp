// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pcac/codes.hpp"
#include "pcac/constructions.hpp"
#include "pcac/diffsets.hpp"
#include "pcac/packing.hpp"
#include "pcac/search.hpp"

using namespace pcac;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const DisjointDifferenceSet& family19() {
  static const DisjointDifferenceSet dds(19, {{0, 4, 5}, {0, 6, 8}, {0, 7, 10}});
  return dds;
}

Outcome example_sequences() {
  const std::vector<std::string> expected{
      "1000110000000000000", "0000001000110000000", "0000000000001000110",
      "1000001010000000000", "0000001000001010000", "0100000000001000001",
      "1000000100100000000", "0000001000000100100", "1001000000001000000",
  };
  const auto start = std::chrono::steady_clock::now();
  const auto set = pcac_ui(family19(), 5);
  const double t = seconds_since(start);
  Outcome o;
  o.require(set.size() == expected.size(), "expected 9 sequences");
  for (std::size_t i = 0; i < std::min(set.size(), expected.size()); ++i) {
    o.require(set[i].to_string() == expected[i], "sequence " + std::to_string(i) + " differs");
  }
  o.require(t < 1.0, "slower than 1 s");
  if (o.pass) o.detail = "9 sequences bit-exact";
  return o;
}

Outcome example_ui() {
  const auto start = std::chrono::steady_clock::now();
  const auto set = pcac_ui(family19(), 5);
  const auto ui = is_ui(set.sequences(), 3, 5);
  const auto pcac = is_pcac(set.sequences(), 5);
  const double t = seconds_since(start);
  Outcome o;
  o.require(ui.status == UiStatus::Verified && !ui.sampled, "is_ui did not verify");
  o.require(ui.configurations == 18144, "examined " + std::to_string(ui.configurations) + " configurations");
  o.require(pcac.valid, "is_pcac failed");
  o.require(t < 1.0, "slower than 1 s");
  if (o.pass) o.detail = "18144 configurations, PCAC holds";
  return o;
}

Outcome weight2_exact() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  int instances = 0;
  for (std::size_t n = 3; n <= 14; ++n) {
    for (std::size_t delta = 0; delta < n / 2; ++delta) {
      const auto res = max_packing_exact(n, 2, delta);
      ++instances;
      o.require(res.complete, "incomplete at n=" + std::to_string(n));
      o.require(res.size == exact_m_weight2(n, delta),
                "n=" + std::to_string(n) + " delta=" + std::to_string(delta) + ": search " +
                    std::to_string(res.size) + " formula " + std::to_string(exact_m_weight2(n, delta)));
    }
  }
  const double t = seconds_since(start);
  o.require(t < 120, "slower than 2 min");
  if (o.pass) o.detail = std::to_string(instances) + " instances";
  return o;
}

Outcome collapse() {
  Outcome o;
  int instances = 0;
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t k : {2u, 3u}) {
      if (k >= n) continue;
      const auto half = max_packing_exact(n, k, n / 2);
      const auto full = max_packing_exact(n, k, n - 1);
      ++instances;
      o.require(half.complete && full.complete, "incomplete at n=" + std::to_string(n));
      o.require(half.size == full.size, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " +
                                            std::to_string(half.size) + " vs " + std::to_string(full.size));
    }
  }
  if (o.pass) o.detail = std::to_string(instances) + " (n, k) pairs";
  return o;
}

Outcome edge_counts() {
  Outcome o;
  std::size_t sets = 0;
  for (std::size_t n : {8u, 9u, 19u, 23u}) {
    for (const auto& a : oracle::subsets(static_cast<int>(n), 3)) {
      // repeated difference d: two of the three cyclic distances agree
      std::vector<std::size_t> dist;
      for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
        const std::size_t d = static_cast<std::size_t>(a[j] - a[i]);
        dist.push_back(std::min(d, n - d));
      }
      std::size_t d = 0;
      if (dist[0] == dist[1] || dist[0] == dist[2]) d = dist[0];
      else if (dist[1] == dist[2]) d = dist[1];
      if (d == 0 || 3 * d == n) continue;
      const CharacteristicSet set(n, {static_cast<residue_t>(a[0]), static_cast<residue_t>(a[1]),
                                      static_cast<residue_t>(a[2])});
      ++sets;
      for (std::size_t delta = 0; delta < n / 2; ++delta) {
        const std::size_t expected = d <= delta ? 2 * delta + 2 + d : 3 * (delta + 1);
        const std::size_t got = supporting_graph(set, delta).size();
        o.require(got == expected, "n=" + std::to_string(n) + " A={" + std::to_string(a[0]) + "," +
                                       std::to_string(a[1]) + "," + std::to_string(a[2]) + "} delta=" +
                                       std::to_string(delta) + ": " + std::to_string(got) + " edges, formula " +
                                       std::to_string(expected));
      }
    }
  }
  o.require(supporting_graph(CharacteristicSet(8, {0, 1, 2}), 2).size() == 7, "G_2({0,1,2}) in K_8");
  o.require(supporting_graph(CharacteristicSet(8, {3, 5, 7}), 2).size() == 8, "G_2({3,5,7}) in K_8");
  if (o.pass) o.detail = std::to_string(sets) + " sets, K_8 anchors 7 and 8";
  return o;
}

struct SandwichCase {
  std::size_t n;
  std::size_t delta;
  PackingSearchResult result;
};

std::vector<SandwichCase> sandwich_cases() {
  std::vector<SandwichCase> out;
  for (std::size_t n : {7u, 13u, 19u}) {
    for (std::size_t delta : {0u, 1u, 2u, 5u}) {
      if (delta < n / 2) out.push_back({n, delta, max_packing_exact(n, 3, delta)});
    }
  }
  return out;
}

Outcome table2() {
  const std::vector<std::uint64_t> lower{429,   1254,  2277,  3591,  4980,  6567,  8388,  10374, 12259,
                                         14319, 16470, 19152, 21650, 23766, 26447, 29315, 32262, 35341};
  Outcome o;
  for (std::size_t t = 1; t <= 18; ++t) {
    const std::size_t n = 200 * t;
    const auto r = bounds_weight3(n, std::sqrt(static_cast<double>(n)));
    o.require(r.lower == lower[t - 1], "n=" + std::to_string(n) + ": lower " + std::to_string(r.lower) +
                                           ", expected " + std::to_string(lower[t - 1]));
    o.require(*r.upper >= lower[t - 1], "n=" + std::to_string(n) + ": upper below the lower entry");
  }
  for (const auto& c : sandwich_cases()) {
    const auto r = bounds_weight3(c.n, static_cast<double>(c.delta));
    o.require(c.result.complete && *r.upper >= c.result.size,
              "upper below the optimum at n=" + std::to_string(c.n) + " delta=" + std::to_string(c.delta));
  }
  if (o.pass) o.detail = "18 lower entries exact, upper dominates";
  return o;
}

Outcome table3() {
  struct Row {
    std::size_t n, k;
    std::uint64_t value;
  };
  const std::vector<Row> rows{{13, 4, 2}, {37, 4, 15}, {61, 4, 30}, {41, 5, 10}, {31, 6, 4}};
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  for (const auto& row : rows) {
    const auto got = table3_row(row.n, row.k);
    const std::string tag = "(" + std::to_string(row.n) + "," + std::to_string(row.k) + ")";
    o.require(got.search.status == SearchStatus::Found, tag + ": no DF found");
    o.require(got.value == row.value, tag + ": value " + std::to_string(got.value));
    o.require(got.verified && got.code_size >= got.value, tag + ": code not verified");
  }
  const auto exception = df_search(61, 6, 2);
  o.require(exception.status == SearchStatus::Exhausted,
            std::string("(61,6): search ") + to_string(exception.status));
  const double t = seconds_since(start);
  o.require(t < 600, "slower than 10 min");
  if (o.pass) {
    o.detail = "5 rows verified, (61,6) exhausted after " + std::to_string(exception.nodes) + " nodes";
  }
  return o;
}

Outcome sandwich() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string sizes;
  for (const auto& c : sandwich_cases()) {
    const auto r = bounds_weight3(c.n, static_cast<double>(c.delta));
    const std::string tag = "n=" + std::to_string(c.n) + " delta=" + std::to_string(c.delta);
    o.require(c.result.complete, tag + ": search incomplete");
    o.require(r.lower <= c.result.size && c.result.size <= *r.upper,
              tag + ": " + std::to_string(r.lower) + " <= " + std::to_string(c.result.size) + " <= " +
                  std::to_string(*r.upper) + " fails");
    sizes += (sizes.empty() ? "" : " ") + std::to_string(c.result.size);
  }
  const double t = seconds_since(start);
  o.require(t < 600, "slower than 10 min");
  if (o.pass) o.detail = "maxima " + sizes;
  return o;
}

Outcome skolem_scopes() {
  Outcome o;
  for (std::size_t r = 1; r <= 40; ++r) {
    const auto dts = skolem_dts(r);
    const std::int64_t expected = static_cast<std::int64_t>(r % 4 <= 1 ? 3 * r : 3 * r + 1);
    o.require(is_dts(dts.blocks()).valid, "r=" + std::to_string(r) + " not a DTS");
    o.require(dts.scope() == expected, "r=" + std::to_string(r) + " scope " + std::to_string(dts.scope()));
  }
  if (o.pass) o.detail = "r = 1..40";
  return o;
}

Outcome designs() {
  Outcome o;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto dds = singer_dds(q);
    o.require(dds.modulus() == q * q + q + 1 && dds.is_difference_family(), "Singer q=" + std::to_string(q));
  }
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto dds = bose_dds(q);
    o.require(dds.modulus() == q * q - 1 && is_dds(dds.blocks(), dds.modulus()).valid, "Bose q=" + std::to_string(q));
  }
  if (o.pass) o.detail = "7 Singer, 6 Bose";
  return o;
}

Outcome gf_ui_check() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  for (std::size_t delta : {0u, 1u, 2u}) {
    const auto set = gf_ui(3, 2, delta);
    const auto r = is_ui(set.sequences(), 3, delta);
    o.require(r.status == UiStatus::Verified && !r.sampled, "delta=" + std::to_string(delta));
  }
  o.require(seconds_since(start) < 60, "slower than 1 min");
  if (o.pass) o.detail = "delta = 0, 1, 2";
  return o;
}

Outcome comparison() {
  const auto rows = compare_periods(9, 3, 5);
  Outcome o;
  std::optional<std::uint64_t> pcac, tdma, gf;
  for (const auto& r : rows) {
    if (!r.period) continue;
    if (r.approach.rfind("pcac", 0) == 0 && r.verified) pcac = std::min(pcac.value_or(*r.period), *r.period);
    if (r.approach == "tdma") tdma = r.period;
    if (r.approach == "gf") gf = r.period;
  }
  o.require(pcac && *pcac == 19, "PCAC period " + (pcac ? std::to_string(*pcac) : std::string("missing")));
  o.require(tdma && *tdma > 45, "TDMA period " + (tdma ? std::to_string(*tdma) : std::string("missing")));
  o.require(gf && *gf >= 54, "GF period " + (gf ? std::to_string(*gf) : std::string("missing")));
  if (o.pass) o.detail = "PCAC 19, TDMA " + std::to_string(*tdma) + ", GF " + std::to_string(*gf);
  return o;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome slopes() {
  CompareOptions opt;
  opt.search_budget = 0;
  opt.construct_limit = 0;
  std::vector<double> lk, lp, lt;
  for (std::uint64_t k = 31; k <= 97; ++k) {
    if (!oracle::is_prime(k)) continue;
    std::optional<std::uint64_t> pcac, tdma;
    for (const auto& r : compare_periods(k * k * k, k, k - 1, opt)) {
      if (!r.period) continue;
      if (r.approach == "pcac-singer" || r.approach == "pcac-bose") pcac = std::min(pcac.value_or(*r.period), *r.period);
      if (r.approach == "tdma") tdma = r.period;
    }
    if (!pcac || !tdma) continue;
    lk.push_back(std::log(static_cast<double>(k)));
    lp.push_back(std::log(static_cast<double>(*pcac)));
    lt.push_back(std::log(static_cast<double>(*tdma)));
  }
  Outcome o;
  o.require(lk.size() == 15, "only " + std::to_string(lk.size()) + " primes with both periods");
  const double sp = slope(lk, lp);
  const double st = slope(lk, lt);
  char buf[96];
  std::snprintf(buf, sizeof buf, "PCAC slope %.3f, TDMA slope %.3f", sp, st);
  o.require(std::abs(sp - 3.0) <= 0.3 && std::abs(st - 4.0) <= 0.3, buf);
  if (o.pass) o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"19-point example sequences", example_sequences},
      {"19-point example UI brute force", example_ui},
      {"weight-2 exactness", weight2_exact},
      {"shift-bound collapse", collapse},
      {"weight-3 edge counts", edge_counts},
      {"weight-3 bounds at sqrt(n)", table2},
      {"DF-based rows for k = 4, 5, 6", table3},
      {"weight-3 bound sandwich", sandwich},
      {"Skolem DTS scopes", skolem_scopes},
      {"Singer and Bose designs", designs},
      {"GF construction UI", gf_ui_check},
      {"period comparison for 9 users", comparison},
      {"asymptotic period slopes", slopes},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %2zu: %s (%s) [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
