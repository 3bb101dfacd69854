#pragma once

// Supporting graphs G_delta(A) = C_A u C_{A+1} u ... u C_{A+delta} in K_n,
// (k, delta)-packings, and the translations between difference sets,
// packings and codes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcac/diffsets.hpp"
#include "pcac/seqcore.hpp"

namespace pcac {

/// Unordered pair of distinct vertices of K_n, stored with u < v.
struct Edge {
  residue_t u = 0;
  residue_t v = 0;
  Edge() = default;
  Edge(residue_t a, residue_t b);
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Smallest t > 0 with u + t = v or v + t = u (mod n); lies in [1, n/2].
std::size_t edge_difference(const Edge& e, std::size_t n);
bool is_exceptional(const Edge& e, std::size_t n);

/// Index of {u, v} in the lexicographic listing of the C(n,2) edges.
std::size_t edge_index(const Edge& e, std::size_t n);

class EdgeSet {
 public:
  explicit EdgeSet(std::size_t n, std::vector<Edge> edges = {});

  std::size_t modulus() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool contains(const Edge& e) const;
  /// Number of edges whose difference equals d.
  std::size_t count_with_difference(std::size_t d) const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;  // sorted, unique
};

/// Union of the cliques on A, A+1, ..., A+delta. Requires |A| >= 2 and delta < n.
EdgeSet supporting_graph(const CharacteristicSet& a, std::size_t delta);

/// Edge count of G_delta(A) for a 3-set A = {x, x+d, x+2d}, from the closed
/// form: 2 delta + 2 + d when d <= delta, 3(delta + 1) otherwise; when 3d = n
/// the set is a single orbit triangle and the count is 3(delta + 1) for
/// delta < n/3 and n otherwise. Requires 1 <= d < n/2 and delta < floor(n/2).
std::size_t supporting_graph_size_weight3(std::size_t d, std::size_t delta, std::size_t n);

struct PackingCollision {
  std::size_t first = 0;
  std::size_t second = 0;
  Edge edge;
};

struct PackingCheck {
  bool valid = false;
  std::optional<PackingCollision> collision;
  explicit operator bool() const noexcept { return valid; }
};

/// True iff the supporting graphs of the members are pairwise edge-disjoint.
/// The witness is the first shared edge found scanning members in order.
/// Throws when member sizes differ or a member has fewer than two elements.
PackingCheck is_packing(std::span<const CharacteristicSet> members, std::size_t delta);

class SupportingGraphPacking {
 public:
  /// Throws std::invalid_argument unless the members form a (k, delta)-packing of K_n.
  SupportingGraphPacking(std::size_t n, std::size_t delta, std::vector<CharacteristicSet> members);

  std::size_t modulus() const noexcept { return n_; }
  std::size_t weight() const noexcept { return k_; }
  std::size_t delta() const noexcept { return delta_; }
  std::size_t size() const noexcept { return members_.size(); }
  std::span<const CharacteristicSet> members() const noexcept { return members_; }

 private:
  std::size_t n_;
  std::size_t k_ = 0;
  std::size_t delta_;
  std::vector<CharacteristicSet> members_;
};

/// Members B_i + t(delta+1), i ascending then t = 0 .. floor(n/(delta+1)) - 1.
SupportingGraphPacking dds_to_packing(const DisjointDifferenceSet& dds, std::size_t delta);

std::vector<BinarySequence> packing_to_code(const SupportingGraphPacking& packing);

/// Characteristic sets of the sequences; throws unless they form a packing.
SupportingGraphPacking code_to_packing(std::span<const BinarySequence> code, std::size_t delta);

}  // namespace pcac
