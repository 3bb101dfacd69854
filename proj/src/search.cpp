#include "pcac/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "pcac/codes.hpp"
#include "pcac/packing.hpp"

namespace pcac {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "found";
    case SearchStatus::Exhausted:
      return "exhausted";
    case SearchStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

namespace {

// ---- maximum packing ------------------------------------------------------

std::vector<std::vector<residue_t>> subsets_in_search_order(std::size_t n, std::size_t k) {
  std::vector<std::vector<residue_t>> out;
  std::vector<residue_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = static_cast<residue_t>(i);
  while (true) {
    out.push_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t i = pos; i < k; ++i) cur[i] = cur[i - 1] + 1;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.back() < b.back(); });
  return out;
}

class PackingSearch {
 public:
  PackingSearch(std::size_t n, std::size_t k, std::size_t delta, std::uint64_t budget)
      : n_(n), k_(k), delta_(delta), budget_(budget) {
    edges_ = n * (n - 1) / 2;
    words_ = (edges_ + 63) / 64;
    pairs_ = k * (k - 1) / 2;
    build_classes();
    build_candidates();
    build_capacities();
  }

  PackingSearchResult run() {
    std::vector<std::uint32_t> alive(sets_.size());
    for (std::uint32_t i = 0; i < alive.size(); ++i) alive[i] = i;
    seed_incumbent();
    PackingSearchResult result;
    result.root_bound = analyse(alive).bound;
    dfs(alive);
    result.complete = !aborted_;
    result.nodes = nodes_;
    result.size = best_.size();
    for (std::uint32_t c : best_) result.members.push_back(sets_[c]);
    return result;
  }

 private:
  using Bits = std::vector<std::uint64_t>;

  // A maximal run of one member's edges inside difference class `cls`,
  // positions start .. start+length-1 (cyclic), holding `pairs` base pairs.
  struct Component {
    std::uint32_t cls = 0;
    std::uint32_t start = 0;
    std::uint32_t length = 0;
    std::uint32_t pairs = 0;
  };

  struct Run {
    std::uint32_t start = 0;
    std::uint32_t length = 0;
    bool whole = false;  // the entire class cycle is free
  };

  struct Analysis {
    std::size_t bound = 0;
    std::size_t units = 0;
    std::vector<std::vector<std::int32_t>> run_of;  // class -> position -> run index
    std::vector<std::vector<Run>> runs;
  };

  static bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }

  void build_classes() {
    // class d holds the edges {s, s+d}; for d = n/2 only s < n/2 are distinct
    classes_.assign(n_ / 2 + 1, {});
    for (std::size_t d = 1; d <= n_ / 2; ++d) {
      const std::size_t len = (2 * d == n_) ? n_ / 2 : n_;
      for (std::size_t s = 0; s < len; ++s) {
        const Edge e(static_cast<residue_t>(s), static_cast<residue_t>((s + d) % n_));
        classes_[d].push_back(static_cast<std::uint32_t>(edge_index(e, n_)));
      }
    }
    edge_class_.assign(edges_, 0);
    edge_pos_.assign(edges_, 0);
    for (std::size_t d = 1; d < classes_.size(); ++d) {
      for (std::size_t s = 0; s < classes_[d].size(); ++s) {
        edge_class_[classes_[d][s]] = static_cast<std::uint32_t>(d);
        edge_pos_[classes_[d][s]] = static_cast<std::uint32_t>(s);
      }
    }
  }

  // Cyclic runs of positions where `on` holds.
  template <typename On>
  static std::vector<Run> find_runs(std::size_t len, On&& on) {
    std::vector<Run> out;
    std::size_t off = len;
    for (std::size_t s = 0; s < len; ++s) {
      if (!on(s)) {
        off = s;
        break;
      }
    }
    if (off == len) {
      out.push_back({0, static_cast<std::uint32_t>(len), true});
      return out;
    }
    std::size_t length = 0, start = 0;
    for (std::size_t step = 1; step <= len; ++step) {
      const std::size_t s = (off + step) % len;
      if (step < len && on(s)) {
        if (length++ == 0) start = s;
      } else if (length > 0) {
        out.push_back({static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(length), false});
        length = 0;
      }
    }
    return out;
  }

  void build_candidates() {
    std::map<std::vector<residue_t>, std::uint32_t> index;
    for (auto& elems : subsets_in_search_order(n_, k_)) {
      const CharacteristicSet set(n_, elems);
      const EdgeSet g = supporting_graph(set, delta_);
      Bits bits(words_, 0);
      std::vector<std::uint32_t> list;
      for (const Edge& e : g.edges()) {
        const std::size_t idx = edge_index(e, n_);
        bits[idx >> 6] |= std::uint64_t{1} << (idx & 63);
        list.push_back(static_cast<std::uint32_t>(idx));
      }
      index.emplace(elems, static_cast<std::uint32_t>(sets_.size()));
      components_.push_back(components_of(set, bits));
      sets_.push_back(set);
      bits_.push_back(std::move(bits));
      lists_.push_back(std::move(list));
    }
    // translate by delta+1: the orbit structure used to seed the incumbent
    shift_.resize(sets_.size());
    for (std::size_t c = 0; c < sets_.size(); ++c) {
      const auto moved = sets_[c].translated(delta_ + 1);
      std::vector<residue_t> key(moved.elements().begin(), moved.elements().end());
      shift_[c] = index.at(key);
    }
  }

  std::vector<Component> components_of(const CharacteristicSet& set, const Bits& bits) const {
    std::vector<Component> out;
    const auto elems = set.elements();
    for (std::size_t d = 1; d < classes_.size(); ++d) {
      const auto& cls = classes_[d];
      std::vector<std::uint32_t> base(cls.size(), 0);
      bool any = false;
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
          const std::size_t idx = edge_index(Edge(elems[i], elems[j]), n_);
          if (edge_class_[idx] == d) {
            ++base[edge_pos_[idx]];
            any = true;
          }
        }
      }
      if (!any) continue;
      for (const Run& r : find_runs(cls.size(), [&](std::size_t s) { return test(bits, cls[s]); })) {
        Component comp{static_cast<std::uint32_t>(d), r.start, r.length, 0};
        for (std::uint32_t i = 0; i < r.length; ++i) comp.pairs += base[(r.start + i) % cls.size()];
        out.push_back(comp);
      }
    }
    return out;
  }

  // capacity_[d][len]: most base pairs that member components can bring into a
  // free run of that length (unbounded knapsack over the component shapes seen).
  void build_capacities() {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> shapes(classes_.size());
    for (const auto& comps : components_) {
      for (const auto& c : comps) shapes[c.cls].emplace_back(c.length, c.pairs);
    }
    capacity_.assign(classes_.size(), {});
    for (std::size_t d = 1; d < classes_.size(); ++d) {
      auto& sh = shapes[d];
      std::sort(sh.begin(), sh.end());
      sh.erase(std::unique(sh.begin(), sh.end()), sh.end());
      auto& cap = capacity_[d];
      cap.assign(classes_[d].size() + 1, 0);
      for (std::size_t l = 1; l < cap.size(); ++l) {
        cap[l] = cap[l - 1];
        for (const auto& [length, pairs] : sh) {
          if (length <= l) cap[l] = std::max(cap[l], cap[l - length] + pairs);
        }
      }
    }
    // classes where a component holds more pairs than plain runs of length
    // min(delta+1, class size) would
    special_.assign(classes_.size(), false);
    for (std::size_t d = 1; d < classes_.size(); ++d) {
      for (const auto& [length, pairs] : shapes[d]) {
        if (pairs > 1 && length < pairs * std::min<std::size_t>(delta_ + 1, classes_[d].size())) special_[d] = true;
      }
    }
  }

  Analysis analyse(const std::vector<std::uint32_t>& alive) const {
    Analysis a;
    if (alive.empty()) return a;
    Bits cover(words_, 0);
    std::size_t min_edges = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t c : alive) {
      for (std::size_t w = 0; w < words_; ++w) cover[w] |= bits_[c][w];
      min_edges = std::min(min_edges, lists_[c].size());
    }
    std::size_t free_edges = 0;
    for (auto w : cover) free_edges += static_cast<std::size_t>(std::popcount(w));

    a.run_of.resize(classes_.size());
    a.runs.resize(classes_.size());
    for (std::size_t d = 1; d < classes_.size(); ++d) {
      const auto& cls = classes_[d];
      a.runs[d] = find_runs(cls.size(), [&](std::size_t s) { return test(cover, cls[s]); });
      a.run_of[d].assign(cls.size(), -1);
      for (std::size_t r = 0; r < a.runs[d].size(); ++r) {
        const Run& run = a.runs[d][r];
        a.units += capacity_[d][run.length];
        for (std::uint32_t i = 0; i < run.length; ++i) {
          a.run_of[d][(run.start + i) % cls.size()] = static_cast<std::int32_t>(r);
        }
      }
    }
    a.bound = std::min({free_edges / min_edges, a.units / pairs_, alive.size()});
    return a;
  }

  // Capacity lost when candidate c takes its edges out of the free runs.
  std::size_t capacity_drop(std::uint32_t c, const Analysis& a) const {
    std::size_t drop = 0;
    const auto& comps = components_[c];
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cuts;  // (offset in run, length)
    for (std::size_t i = 0; i < comps.size();) {
      const std::uint32_t d = comps[i].cls;
      const std::size_t len = classes_[d].size();
      const auto& cap = capacity_[d];
      std::size_t j = i;
      while (j < comps.size() && comps[j].cls == d) ++j;
      // group this class's components by run
      std::vector<std::pair<std::int32_t, std::size_t>> order;
      for (std::size_t t = i; t < j; ++t) order.emplace_back(a.run_of[d][comps[t].start], t);
      std::sort(order.begin(), order.end());
      for (std::size_t g = 0; g < order.size();) {
        const std::int32_t r = order[g].first;
        const Run& run = a.runs[d][static_cast<std::size_t>(r)];
        cuts.clear();
        std::size_t h = g;
        for (; h < order.size() && order[h].first == r; ++h) {
          const Component& comp = comps[order[h].second];
          cuts.emplace_back(static_cast<std::uint32_t>((comp.start + len - run.start) % len), comp.length);
        }
        std::sort(cuts.begin(), cuts.end());
        std::size_t kept = 0;
        if (run.whole) {
          // pieces between consecutive components around the cycle
          for (std::size_t t = 0; t < cuts.size(); ++t) {
            const std::size_t end = cuts[t].first + cuts[t].second;
            const std::size_t next = t + 1 < cuts.size() ? cuts[t + 1].first : cuts[0].first + len;
            kept += cap[next - end];
          }
        } else {
          std::size_t pos = 0;
          for (const auto& [offset, length] : cuts) {
            kept += cap[offset - pos];
            pos = offset + length;
          }
          kept += cap[run.length - pos];
        }
        drop += cap[run.length] - kept;
        g = h;
      }
      i = j;
    }
    return drop;
  }

  void seed_incumbent() {
    // first fit in candidate order, and first fit over translate orbits
    // B, B+(delta+1), B+2(delta+1), ...; keep the larger
    for (int variant = 0; variant < 2; ++variant) {
      Bits used(words_, 0);
      std::vector<std::uint32_t> chosen;
      auto take = [&](std::uint32_t c) {
        for (std::size_t w = 0; w < words_; ++w) {
          if (used[w] & bits_[c][w]) return;
        }
        for (std::size_t w = 0; w < words_; ++w) used[w] |= bits_[c][w];
        chosen.push_back(c);
      };
      for (std::uint32_t c = 0; c < sets_.size(); ++c) {
        if (variant == 0) {
          take(c);
          continue;
        }
        std::uint32_t t = c;
        for (std::size_t step = 0; step < n_ / (delta_ + 1); ++step, t = shift_[t]) take(t);
      }
      if (chosen.size() > best_.size()) best_ = std::move(chosen);
    }
  }

  bool disjoint(std::uint32_t a, std::uint32_t b) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (bits_[a][w] & bits_[b][w]) return false;
    }
    return true;
  }

  void dfs(std::vector<std::uint32_t> alive) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (current_.size() > best_.size()) best_ = current_;
    while (true) {
      if (alive.empty() || current_.size() + alive.size() <= best_.size()) return;
      const Analysis a = analyse(alive);
      if (current_.size() + a.bound <= best_.size()) return;
      // drop candidates whose own placement already caps the total at best
      const std::size_t need = pairs_ * (best_.size() - current_.size());
      std::vector<std::uint32_t> kept;
      for (std::uint32_t c : alive) {
        const std::size_t drop = capacity_drop(c, a);
        if (drop <= a.units && a.units - drop >= need) kept.push_back(c);
      }
      if (kept.size() == alive.size()) break;
      alive = std::move(kept);
    }

    // Branch edge: classes whose components can carry several pairs in a short
    // run come first, lowest class first, since their placements decide most
    // of the capacity; then the coverable edge with the fewest live candidates.
    std::vector<std::uint32_t> count(edges_, 0);
    for (std::uint32_t c : alive) {
      for (std::uint32_t e : lists_[c]) ++count[e];
    }
    std::uint32_t edge = 0, fewest = std::numeric_limits<std::uint32_t>::max();
    std::size_t rank = std::numeric_limits<std::size_t>::max();
    for (std::uint32_t e = 0; e < edges_; ++e) {
      if (count[e] == 0) continue;
      const std::size_t r = special_[edge_class_[e]] ? edge_class_[e] : classes_.size();
      if (r < rank || (r == rank && count[e] < fewest)) {
        rank = r;
        fewest = count[e];
        edge = e;
      }
    }

    std::vector<std::uint32_t> child;
    for (std::uint32_t c : alive) {
      if (!test(bits_[c], edge)) continue;
      child.clear();
      for (std::uint32_t o : alive) {
        if (o != c && disjoint(c, o)) child.push_back(o);
      }
      current_.push_back(c);
      dfs(child);
      current_.pop_back();
      if (aborted_) return;
    }
    child.clear();
    for (std::uint32_t o : alive) {
      if (!test(bits_[o], edge)) child.push_back(o);
    }
    dfs(std::move(child));
  }

  std::size_t n_, k_, delta_;
  std::uint64_t budget_;
  std::size_t edges_ = 0, words_ = 0, pairs_ = 0;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<std::uint32_t> edge_class_, edge_pos_;
  std::vector<std::vector<std::size_t>> capacity_;
  std::vector<CharacteristicSet> sets_;
  std::vector<Bits> bits_;
  std::vector<std::vector<std::uint32_t>> lists_;
  std::vector<std::vector<Component>> components_;
  std::vector<std::uint32_t> shift_;
  std::vector<bool> special_;
  std::vector<std::uint32_t> current_, best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

// ---- difference families ---------------------------------------------------

class DdsSearch {
 public:
  using Visit = std::function<bool(const std::vector<Block>&)>;  // false stops the search

  DdsSearch(std::size_t n, std::size_t k, std::size_t r, std::uint64_t budget)
      : n_(n), k_(k), r_(r), budget_(budget) {
    if (k < 2) throw std::invalid_argument("blocks need at least two elements");
    if (r == 0) throw std::invalid_argument("need at least one block");
    if (n < r * k * (k - 1) + 1) {
      throw std::invalid_argument("infeasible: n = " + std::to_string(n) + " < r k(k-1) + 1 = " +
                                  std::to_string(r * k * (k - 1) + 1));
    }
    distances_ = (n - 1) / 2;
    slack_ = distances_ - r * k * (k - 1) / 2;
    used_.assign(n / 2 + 1, false);
    if (n % 2 == 0) used_[n / 2] = true;
  }

  SearchStatus run(const Visit& visit) {
    visit_ = &visit;
    place_block(0);
    if (aborted_) return SearchStatus::BudgetExceeded;
    return stopped_ ? SearchStatus::Found : SearchStatus::Exhausted;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::size_t dist(std::size_t a, std::size_t b) const {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n_ - d);
  }

  bool tick() {
    if (++nodes_ > budget_) aborted_ = true;
    return !aborted_;
  }

  void place_block(std::size_t skipped) {
    if (aborted_ || stopped_) return;
    if (blocks_.size() == r_) {
      if (!(*visit_)(blocks_)) stopped_ = true;
      return;
    }
    std::size_t g = 1;
    while (g <= n_ / 2 && used_[g]) ++g;
    if (g > n_ / 2) return;
    if (!tick()) return;

    used_[g] = true;
    blocks_.push_back({0, static_cast<residue_t>(g)});
    extend_block(0, skipped);
    blocks_.pop_back();
    if (aborted_ || stopped_) {
      used_[g] = false;
      return;
    }
    if (skipped < slack_) place_block(skipped + 1);  // leave g uncovered
    used_[g] = false;
  }

  // Adds elements larger than `from` to the open block until it has k of them.
  void extend_block(std::size_t from, std::size_t skipped) {
    const std::size_t open = blocks_.size() - 1;
    if (blocks_[open].size() == k_) {
      const Block placed = blocks_[open];
      std::sort(blocks_[open].begin(), blocks_[open].end());
      place_block(skipped);
      blocks_[open] = placed;
      return;
    }
    std::vector<std::size_t> fresh;
    for (std::size_t x = from + 1; x < n_; ++x) {
      Block& block = blocks_[open];
      if (x == block[1]) continue;
      fresh.clear();
      bool ok = true;
      for (residue_t b : block) {
        const std::size_t d = dist(x, b);
        if (used_[d] || std::find(fresh.begin(), fresh.end(), d) != fresh.end()) {
          ok = false;
          break;
        }
        fresh.push_back(d);
      }
      if (!ok) continue;
      if (!tick()) return;
      for (std::size_t d : fresh) used_[d] = true;
      block.push_back(static_cast<residue_t>(x));
      extend_block(x, skipped);
      blocks_[open].pop_back();
      for (std::size_t d : fresh) used_[d] = false;
      if (aborted_ || stopped_) return;
    }
  }

  std::size_t n_, k_, r_;
  std::uint64_t budget_;
  std::size_t distances_ = 0, slack_ = 0;
  std::vector<bool> used_;
  std::vector<Block> blocks_;
  const Visit* visit_ = nullptr;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool stopped_ = false;
};

}  // namespace

PackingSearchResult max_packing_exact(std::size_t n, std::size_t k, std::size_t delta, std::uint64_t budget) {
  if (k < 2) throw std::invalid_argument("packing members need at least two elements");
  if (k > n) throw std::invalid_argument("member size exceeds n");
  if (delta >= n) throw std::invalid_argument("shift bound must be below the period");
  if (n > 64) throw std::invalid_argument("exact packing search is limited to n <= 64");
  return PackingSearch(n, k, delta, budget).run();
}

DfSearchResult df_search(std::size_t n, std::size_t k, std::size_t r, std::uint64_t budget) {
  DdsSearch search(n, k, r, budget);
  DfSearchResult result;
  result.status = search.run([&](const std::vector<Block>& blocks) {
    result.dds.emplace(n, blocks);
    return false;
  });
  result.nodes = search.nodes();
  return result;
}

DfEnumeration df_search_all(std::size_t n, std::size_t k, std::size_t r, std::uint64_t budget) {
  DdsSearch search(n, k, r, budget);
  DfEnumeration result;
  const auto status = search.run([&](const std::vector<Block>& blocks) {
    result.solutions.emplace_back(n, blocks);
    return true;
  });
  result.complete = status != SearchStatus::BudgetExceeded;
  result.nodes = search.nodes();
  return result;
}

Table3Row table3_row(std::size_t n, std::size_t k, std::uint64_t budget) {
  if (k < 2 || (n - 1) % (k * (k - 1)) != 0) {
    throw std::invalid_argument("need k(k-1) | n-1 for an (n,k)-DF");
  }
  Table3Row row;
  row.n = n;
  row.k = k;
  row.r = (n - 1) / (k * (k - 1));
  const double root = std::sqrt(static_cast<double>(n));
  row.value = row.r * translate_count(n, root);
  row.integer_delta = static_cast<std::size_t>(root);
  while ((row.integer_delta + 1) * (row.integer_delta + 1) <= n) ++row.integer_delta;
  while (row.integer_delta * row.integer_delta > n) --row.integer_delta;
  row.search = df_search(n, k, row.r, budget);
  if (!row.search.dds) return row;

  const auto code = packing_to_code(dds_to_packing(*row.search.dds, row.integer_delta));
  row.code_size = code.size();
  row.verified = static_cast<bool>(is_pcac(code, row.integer_delta));
  return row;
}

}  // namespace pcac
