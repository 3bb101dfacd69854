#include "pcac/diffsets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "pcac/field.hpp"

namespace pcac {

namespace {

void validate_blocks(std::span<const Block> blocks, std::size_t n) {
  if (blocks.empty()) throw std::invalid_argument("difference set needs at least one block");
  if (n == 0) throw std::invalid_argument("modulus must be positive");
  for (const Block& b : blocks) {
    Block sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.back() >= n) {
      throw std::invalid_argument("block element " + std::to_string(sorted.back()) + " outside Z_" +
                                  std::to_string(n));
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("block has a repeated element");
    }
  }
}

template <typename Visit>
void for_each_difference(std::span<const Block> blocks, std::size_t n, Visit&& visit) {
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    for (residue_t x : blocks[bi]) {
      for (residue_t y : blocks[bi]) {
        if (x == y) continue;
        visit(static_cast<residue_t>((x + n - y) % n), bi, x, y);
      }
    }
  }
}

}  // namespace

DdsCheck is_dds(std::span<const Block> blocks, std::size_t n) {
  validate_blocks(blocks, n);
  std::vector<std::uint32_t> count(n, 0);
  for_each_difference(blocks, n, [&](residue_t g, std::size_t, residue_t, residue_t) { ++count[g]; });
  const auto it = std::find_if(count.begin(), count.end(), [](std::uint32_t c) { return c > 1; });
  if (it == count.end()) return {true, std::nullopt};

  DifferenceCollision w;
  w.residue = static_cast<residue_t>(it - count.begin());
  int seen = 0;
  for_each_difference(blocks, n, [&](residue_t g, std::size_t bi, residue_t x, residue_t y) {
    if (g != w.residue || seen >= 2) return;
    if (seen++ == 0) {
      w.first_block = bi;
      w.first = {x, y};
    } else {
      w.second_block = bi;
      w.second = {x, y};
    }
  });
  return {false, w};
}

bool is_difference_family(std::span<const Block> blocks, std::size_t n) {
  if (!is_dds(blocks, n)) return false;
  std::size_t diffs = 0;
  for (const Block& b : blocks) diffs += b.size() * (b.size() - 1);
  return diffs + 1 == n;
}

std::size_t dds_size_necessary(std::size_t n, std::size_t k) {
  if (k < 2 || n <= k) throw std::invalid_argument("need n > k >= 2");
  return (n - 1) / (k * (k - 1));
}

DisjointDifferenceSet::DisjointDifferenceSet(std::size_t n, std::vector<Block> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  const auto check = is_dds(blocks_, n_);
  const std::size_t k = blocks_.front().size();
  if (k < 2) throw std::invalid_argument("blocks must have at least two elements");
  for (Block& b : blocks_) {
    if (b.size() != k) throw std::invalid_argument("blocks of a disjoint difference set must have equal size");
    std::sort(b.begin(), b.end());
  }
  if (!check) {
    throw std::invalid_argument("not a disjoint difference set: residue " +
                                std::to_string(check.collision->residue) + " occurs twice");
  }
}

bool DisjointDifferenceSet::is_difference_family() const { return pcac::is_difference_family(blocks_, n_); }

DisjointDifferenceSet canonicalize(const DisjointDifferenceSet& dds) {
  const std::size_t n = dds.modulus();
  std::vector<Block> out;
  for (const Block& b : dds.blocks()) {
    const residue_t lo = *std::min_element(b.begin(), b.end());
    Block moved;
    for (residue_t x : b) moved.push_back(static_cast<residue_t>((x + n - lo) % n));
    std::sort(moved.begin(), moved.end());
    out.push_back(std::move(moved));
  }
  std::sort(out.begin(), out.end());
  return DisjointDifferenceSet(n, std::move(out));
}

DtsCheck is_dts(std::span<const std::vector<std::int64_t>> blocks) {
  if (blocks.empty()) throw std::invalid_argument("difference triangle set needs at least one block");
  const std::size_t size = blocks.front().size();
  std::vector<std::int64_t> diffs;
  for (const auto& b : blocks) {
    if (b.size() != size || b.size() < 2) throw std::invalid_argument("DTS blocks must share a size >= 2");
    if (b.front() != 0) throw std::invalid_argument("normalized DTS blocks start at 0");
    if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw std::invalid_argument("DTS blocks must be strictly increasing");
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t jj = j + 1; jj < b.size(); ++jj) diffs.push_back(b[jj] - b[j]);
    }
  }
  std::sort(diffs.begin(), diffs.end());
  if (auto it = std::adjacent_find(diffs.begin(), diffs.end()); it != diffs.end()) return {false, *it};
  return {true, std::nullopt};
}

DifferenceTriangleSet::DifferenceTriangleSet(std::vector<std::vector<std::int64_t>> blocks)
    : blocks_(std::move(blocks)) {
  if (!is_dts(blocks_)) throw std::invalid_argument("differences of the triangle set are not distinct");
  for (const auto& b : blocks_) scope_ = std::max(scope_, b.back());
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> skolem_pairs(std::size_t r) {
  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  if (r == 0) throw std::invalid_argument("Skolem sequence order must be positive");
  std::vector<Pair> pairs;
  auto add = [&pairs](std::int64_t a, std::int64_t b) {
    pairs.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  };
  const auto s = static_cast<std::int64_t>(r / 4);

  // Orders below the range of the residue-class formulas.
  if (r == 1) {
    add(1, 2);
  } else if (r == 2) {
    add(1, 2), add(3, 5);  // hooked: 1 1 2 _ 2
  } else if (r == 4) {
    add(1, 2), add(4, 6), add(5, 8), add(3, 7);  // 1 1 4 2 3 2 4 3
  } else if (r == 5) {
    add(8, 9), add(1, 3), add(4, 7), add(2, 6), add(5, 10);  // 2 4 2 3 5 4 3 1 1 5
  } else {
    switch (r % 4) {
      case 0:  // r = 4s, s >= 2
        for (std::int64_t i = 1; i <= 2 * s; ++i) add(4 * s + i - 1, 8 * s - i + 1);
        for (std::int64_t i = 1; i <= s - 1; ++i) add(i, 4 * s - i - 1);
        for (std::int64_t i = 1; i <= s - 2; ++i) add(s + i + 1, 3 * s - i);
        add(s, s + 1), add(2 * s, 4 * s - 1), add(2 * s + 1, 6 * s);
        break;
      case 1:  // r = 4s + 1, s >= 2
        for (std::int64_t i = 1; i <= 2 * s; ++i) add(4 * s + i + 1, 8 * s - i + 3);
        for (std::int64_t i = 1; i <= s; ++i) add(i, 4 * s - i + 1);
        for (std::int64_t i = 1; i <= s - 2; ++i) add(s + i + 2, 3 * s - i + 1);
        add(s + 1, s + 2), add(2 * s + 1, 6 * s + 2), add(2 * s + 2, 4 * s + 1);
        break;
      case 2:  // hooked, r = 4s + 2, s >= 1
        for (std::int64_t i = 1; i <= 2 * s; ++i) add(4 * s + i + 1, 8 * s - i + 4);
        for (std::int64_t i = 1; i <= s - 1; ++i) add(i, 4 * s - i + 2);
        for (std::int64_t i = 1; i <= s; ++i) add(s + i - 1, 3 * s - i + 1);
        add(2 * s, 6 * s + 2), add(3 * s + 1, 3 * s + 2), add(6 * s + 3, 8 * s + 5);
        break;
      default:  // hooked, r = 4s + 3, s >= 0
        for (std::int64_t i = 1; i <= 2 * s; ++i) add(4 * s + i + 3, 8 * s - i + 6);
        for (std::int64_t i = 1; i <= s; ++i) add(i, 4 * s - i + 4);
        for (std::int64_t i = 1; i <= s; ++i) add(s + i, 3 * s - i + 2);
        add(2 * s + 1, 6 * s + 4), add(3 * s + 2, 3 * s + 3), add(6 * s + 5, 8 * s + 7);
        break;
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return a.second - a.first < b.second - b.first;
  });
  return pairs;
}

DifferenceTriangleSet skolem_dts(std::size_t r) {
  const auto pairs = skolem_pairs(r);
  std::vector<std::vector<std::int64_t>> blocks;
  for (std::size_t i = 1; i <= r; ++i) {
    const auto [a, b] = pairs[i - 1];
    if (b - a != i) throw std::logic_error("Skolem pair has the wrong difference");
    // differences i, a + r, b + r: {1..r} and the shifted pair positions
    blocks.push_back({0, static_cast<std::int64_t>(i), static_cast<std::int64_t>(b + r)});
  }
  // The constructor runs the DTS checker.
  return DifferenceTriangleSet(std::move(blocks));
}

DisjointDifferenceSet dts_to_dds(const DifferenceTriangleSet& dts, std::size_t n) {
  if (n < static_cast<std::size_t>(2 * dts.scope() + 1)) {
    throw std::invalid_argument("modulus " + std::to_string(n) + " below 2*scope+1 = " +
                                std::to_string(2 * dts.scope() + 1));
  }
  std::vector<Block> blocks;
  for (const auto& b : dts.blocks()) {
    Block mod;
    for (std::int64_t x : b) mod.push_back(static_cast<residue_t>(x));
    blocks.push_back(std::move(mod));
  }
  return DisjointDifferenceSet(n, std::move(blocks));
}

namespace {

PrimePower require_prime_power(std::uint32_t q) {
  auto pp = as_prime_power(q);
  if (!pp) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return *pp;
}

}  // namespace

DisjointDifferenceSet singer_dds(std::uint32_t q) {
  const auto [p, e] = require_prime_power(q);
  const FiniteField field(p, 3 * e);
  const std::uint64_t n = std::uint64_t{q} * q + q + 1;
  const auto base = field.subfield(e);
  const FieldElement alpha = field.primitive_element();
  Block block;
  for (FieldElement a : base) {
    for (FieldElement b : base) {
      const FieldElement x = field.add(a, field.mul(b, alpha));
      if (x == field.zero()) continue;
      block.push_back(static_cast<residue_t>(field.discrete_log(x) % n));
    }
  }
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  if (block.size() != q + 1) throw std::logic_error("Singer construction produced the wrong block size");
  auto dds = canonicalize(DisjointDifferenceSet(n, {std::move(block)}));
  if (!dds.is_difference_family()) throw std::logic_error("Singer construction is not a perfect difference set");
  return dds;
}

DisjointDifferenceSet bose_dds(std::uint32_t q) {
  const auto [p, e] = require_prime_power(q);
  if (q < 2) throw std::invalid_argument("Bose construction needs q >= 2");
  const FiniteField field(p, 2 * e);
  const std::uint64_t n = std::uint64_t{q} * q - 1;
  const FieldElement alpha = field.primitive_element();
  Block block;
  for (FieldElement a : field.subfield(e)) {
    const FieldElement x = field.add(alpha, a);
    // alpha lies outside GF(q), so alpha + a never vanishes
    if (x == field.zero()) throw std::logic_error("Bose construction hit zero");
    block.push_back(field.discrete_log(x));
  }
  return canonicalize(DisjointDifferenceSet(n, {std::move(block)}));
}

}  // namespace pcac
