#include "pcac/packing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace pcac {

Edge::Edge(residue_t a, residue_t b) : u(std::min(a, b)), v(std::max(a, b)) {
  if (a == b) throw std::invalid_argument("an edge needs two distinct vertices");
}

std::size_t edge_difference(const Edge& e, std::size_t n) {
  const std::size_t diff = e.v - e.u;
  return std::min(diff, n - diff);
}

bool is_exceptional(const Edge& e, std::size_t n) { return n % 2 == 0 && edge_difference(e, n) == n / 2; }

std::size_t edge_index(const Edge& e, std::size_t n) {
  // edges {u, v} with u < v listed by u then v
  const std::size_t u = e.u;
  return u * (2 * n - u - 1) / 2 + (e.v - u - 1);
}

EdgeSet::EdgeSet(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.v >= n_) throw std::invalid_argument("edge endpoint outside Z_n");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool EdgeSet::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::size_t EdgeSet::count_with_difference(std::size_t d) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return edge_difference(e, n_) == d; }));
}

EdgeSet supporting_graph(const CharacteristicSet& a, std::size_t delta) {
  const std::size_t n = a.modulus();
  if (a.size() < 2) throw std::invalid_argument("supporting graph needs at least two vertices");
  if (delta >= n) throw std::invalid_argument("shift bound must be below the period");
  std::vector<Edge> edges;
  const auto elems = a.elements();
  for (std::size_t tau = 0; tau <= delta; ++tau) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        edges.emplace_back(static_cast<residue_t>((elems[i] + tau) % n),
                           static_cast<residue_t>((elems[j] + tau) % n));
      }
    }
  }
  return EdgeSet(n, std::move(edges));
}

std::size_t supporting_graph_size_weight3(std::size_t d, std::size_t delta, std::size_t n) {
  if (d == 0 || 2 * d >= n) throw std::invalid_argument("repeated difference must satisfy 1 <= d < n/2");
  if (delta >= n / 2) throw std::invalid_argument("shift bound must be below floor(n/2)");
  if (3 * d == n) return d > delta ? 3 * (delta + 1) : n;
  return d <= delta ? 2 * delta + 2 + d : 3 * (delta + 1);
}

PackingCheck is_packing(std::span<const CharacteristicSet> members, std::size_t delta) {
  if (members.empty()) return {true, std::nullopt};
  const std::size_t n = members.front().modulus();
  const std::size_t k = members.front().size();
  for (const auto& m : members) {
    if (m.size() != k) throw std::invalid_argument("packing members must all have the same size");
    if (m.modulus() != n) throw std::invalid_argument("packing members must share the modulus");
  }
  std::unordered_map<std::size_t, std::size_t> owner;
  for (std::size_t j = 0; j < members.size(); ++j) {
    const EdgeSet g = supporting_graph(members[j], delta);
    for (const Edge& e : g.edges()) {
      auto [it, inserted] = owner.emplace(edge_index(e, n), j);
      if (!inserted) return {false, PackingCollision{it->second, j, e}};
    }
  }
  return {true, std::nullopt};
}

SupportingGraphPacking::SupportingGraphPacking(std::size_t n, std::size_t delta,
                                               std::vector<CharacteristicSet> members)
    : n_(n), delta_(delta), members_(std::move(members)) {
  if (delta_ >= n_) throw std::invalid_argument("shift bound must be below the period");
  for (const auto& m : members_) {
    if (m.modulus() != n_) throw std::invalid_argument("packing member has the wrong modulus");
  }
  if (!members_.empty()) k_ = members_.front().size();
  const auto check = is_packing(members_, delta_);
  if (!check) {
    const auto& c = *check.collision;
    throw std::invalid_argument("members " + std::to_string(c.first) + " and " + std::to_string(c.second) +
                                " share edge {" + std::to_string(c.edge.u) + "," + std::to_string(c.edge.v) +
                                "}");
  }
}

SupportingGraphPacking dds_to_packing(const DisjointDifferenceSet& dds, std::size_t delta) {
  const std::size_t n = dds.modulus();
  if (delta >= n) throw std::invalid_argument("shift bound must be below the period");
  const std::size_t translates = n / (delta + 1);
  std::vector<CharacteristicSet> members;
  members.reserve(dds.block_count() * translates);
  for (const Block& b : dds.blocks()) {
    const CharacteristicSet base(n, b);
    for (std::size_t t = 0; t < translates; ++t) members.push_back(base.translated(t * (delta + 1)));
  }
  return SupportingGraphPacking(n, delta, std::move(members));
}

std::vector<BinarySequence> packing_to_code(const SupportingGraphPacking& packing) {
  if (packing.weight() < 2 && packing.size() > 0) throw std::invalid_argument("codewords need weight >= 2");
  std::vector<BinarySequence> code;
  code.reserve(packing.size());
  for (const auto& m : packing.members()) code.push_back(from_characteristic_set(m));
  return code;
}

SupportingGraphPacking code_to_packing(std::span<const BinarySequence> code, std::size_t delta) {
  if (code.empty()) throw std::invalid_argument("empty code");
  std::vector<CharacteristicSet> members;
  for (const auto& x : code) members.push_back(characteristic_set(x));
  if (members.front().size() < 2) throw std::invalid_argument("codewords need weight >= 2");
  return SupportingGraphPacking(code.front().period(), delta, std::move(members));
}

}  // namespace pcac
