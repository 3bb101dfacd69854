#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pcac/codes.hpp"
#include "pcac/packing.hpp"
#include "pcac/search.hpp"

using namespace pcac;

namespace {

// Translation-invariant fingerprint of a family: per block, the sorted list
// of nonzero differences; blocks sorted.
using Signature = std::vector<std::vector<int>>;

Signature signature(const std::vector<oracle::Set>& blocks, int n) {
  Signature out;
  for (const auto& b : blocks) {
    std::vector<int> d;
    for (int x : b) {
      for (int y : b) {
        if (x != y) d.push_back(oracle::mod(x - y, n));
      }
    }
    std::sort(d.begin(), d.end());
    out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every family of r blocks, each a k-subset of Z_n containing 0, that is a DDS.
std::set<Signature> all_dds(int n, int k, int r) {
  std::vector<oracle::Set> blocks;
  for (auto rest : oracle::subsets(n - 1, k - 1)) {
    oracle::Set b{0};
    for (int x : rest) b.push_back(x + 1);
    if (oracle::is_dds({b}, n)) blocks.push_back(b);
  }
  std::set<Signature> out;
  std::vector<oracle::Set> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(chosen.size()) == r) {
      out.insert(signature(chosen, n));
      return;
    }
    for (std::size_t i = from; i < blocks.size(); ++i) {
      chosen.push_back(blocks[i]);
      if (oracle::is_dds(chosen, n)) rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("exact packing search matches the brute-force oracle") {
  for (std::size_t k : {2u, 3u}) {
    for (std::size_t n = k + 1; n <= 10; ++n) {
      for (std::size_t delta = 0; delta < n; ++delta) {
        const auto res = max_packing_exact(n, k, delta);
        const auto brute = oracle::max_packing(static_cast<int>(n), static_cast<int>(k), static_cast<int>(delta));
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(delta);
        CHECK(res.complete);
        CHECK(res.size == brute);
        CHECK(res.members.size() == res.size);
        CHECK(res.root_bound >= res.size);
        if (res.size > 1) CHECK(is_packing(res.members, delta));
      }
    }
  }
  for (std::size_t n = 5; n <= 9; ++n) {
    for (std::size_t delta = 0; delta < 3; ++delta) {
      CHECK(max_packing_exact(n, 4, delta).size ==
            oracle::max_packing(static_cast<int>(n), 4, static_cast<int>(delta)));
    }
  }
}

TEST_CASE("exact packing search reports an incomplete run") {
  const auto res = max_packing_exact(19, 3, 1, 5);
  CHECK_FALSE(res.complete);
  CHECK(res.size > 0);
  CHECK(is_packing(res.members, 1));
  CHECK(res.root_bound >= res.size);
  CHECK_THROWS_AS(max_packing_exact(65, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_packing_exact(7, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(max_packing_exact(7, 3, 7), std::invalid_argument);
}

TEST_CASE("DDS search reaches every family found by unrestricted enumeration") {
  const std::vector<std::tuple<int, int, int>> cases{{7, 3, 1},  {8, 3, 1},  {9, 3, 1},  {10, 3, 1}, {11, 3, 1},
                                                     {12, 3, 1}, {13, 3, 1}, {13, 3, 2}, {13, 4, 1}, {14, 4, 1}};
  for (auto [n, k, r] : cases) {
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(r);
    const auto expected = all_dds(n, k, r);
    const auto found = df_search_all(n, k, r);
    REQUIRE(found.complete);
    std::set<Signature> got;
    for (const auto& dds : found.solutions) {
      std::vector<oracle::Set> blocks;
      for (const auto& b : dds.blocks()) blocks.emplace_back(b.begin(), b.end());
      REQUIRE(oracle::is_dds(blocks, n));
      got.insert(signature(blocks, n));
    }
    CHECK(got == expected);
    const auto first = df_search(n, k, r);
    CHECK((first.status == SearchStatus::Found) == !expected.empty());
  }
}

TEST_CASE("DF search on known families") {
  const auto a = df_search(37, 4, 3);
  REQUIRE(a.status == SearchStatus::Found);
  CHECK(a.dds->is_difference_family());
  const auto b = df_search(31, 6, 1);
  REQUIRE(b.status == SearchStatus::Found);
  CHECK(b.dds->is_difference_family());
  CHECK(df_search(37, 4, 3, 10).status == SearchStatus::BudgetExceeded);
  CHECK_THROWS_AS(df_search(36, 4, 3), std::invalid_argument);
  CHECK(std::string(to_string(SearchStatus::Exhausted)) == "exhausted");
}

TEST_CASE("table rows from difference families") {
  const auto row = table3_row(13, 4);
  CHECK(row.r == 1);
  CHECK(row.value == 2);
  CHECK(row.integer_delta == 3);
  CHECK(row.code_size == 3);
  CHECK(row.verified);
  CHECK_THROWS_AS(table3_row(14, 4), std::invalid_argument);
}
