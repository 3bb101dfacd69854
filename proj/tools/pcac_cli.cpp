// pcac: construct, verify, bound, search and compare protocol-sequence sets.
// Exit codes: 0 pass/success, 1 fail (with witness), 2 unverified or
// incomplete within budget, 3 usage or input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcac/codes.hpp"
#include "pcac/constructions.hpp"
#include "pcac/diffsets.hpp"
#include "pcac/field.hpp"
#include "pcac/formats.hpp"
#include "pcac/packing.hpp"
#include "pcac/search.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pcac;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUnverified = 2;
constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return in;
}

json blocks_json(std::span<const Block> blocks) {
  json out = json::array();
  for (const Block& b : blocks) out.push_back(b);
  return out;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string method;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::uint32_t q = 0;
  std::size_t m = 2;
  std::size_t r = 0;
  std::size_t n = 0;
  std::string dds_path;
  std::string out;
  std::string format = "txt";
  std::uint64_t budget = kDefaultUiBudget;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

int run_construct(const ConstructArgs& a) {
  Metadata meta{{"method", a.method}, {"delta", std::to_string(a.delta)}};
  std::optional<SequenceSet> set;
  std::optional<DisjointDifferenceSet> dds;
  std::size_t active = 0;  // UI check target for tdma/gf

  if (a.method == "tdma") {
    if (a.k == 0) throw UsageError("--k is required for tdma");
    set = tdma_ui(a.k, a.delta);
    active = a.k;
    meta["k"] = std::to_string(a.k);
  } else if (a.method == "gf") {
    if (a.q == 0) throw UsageError("--q is required for gf");
    set = gf_ui(a.q, a.m, a.delta);
    active = a.k ? a.k : std::min<std::size_t>(gf_max_active(a.q, a.m), set->size());
    if (active > gf_max_active(a.q, a.m)) throw UsageError("--k exceeds (q-1)/(m-1)+1 for these q, m");
    meta["q"] = std::to_string(a.q);
    meta["m"] = std::to_string(a.m);
    meta["active"] = std::to_string(active);
  } else if (a.method == "singer" || a.method == "bose") {
    if (a.q == 0) throw UsageError("--q is required for " + a.method);
    dds = a.method == "singer" ? singer_dds(a.q) : bose_dds(a.q);
    meta["q"] = std::to_string(a.q);
  } else if (a.method == "skolem") {
    if (a.r == 0) throw UsageError("--r is required for skolem");
    const auto dts = skolem_dts(a.r);
    const std::size_t n = a.n ? a.n : static_cast<std::size_t>(2 * dts.scope() + 1);
    dds = dts_to_dds(dts, n);
    meta["r"] = std::to_string(a.r);
    meta["n"] = std::to_string(n);
  } else if (a.method == "dds-file") {
    if (a.dds_path.empty()) throw UsageError("--dds is required for dds-file");
    auto in = open_input(a.dds_path);
    const auto file = read_dds(in);
    dds.emplace(file.n, file.blocks);
    meta["dds"] = a.dds_path;
  } else {
    throw UsageError("unknown method " + a.method);
  }

  bool ok = true;
  if (dds) {
    // pcac_ui runs is_pcac itself and throws on failure
    try {
      set = pcac_ui(*dds, a.delta);
      meta["verifier"] = "pcac";
    } catch (const std::logic_error& e) {
      std::cerr << "verification failed: " << e.what() << "\n";
      return kFail;
    }
  } else {
    auto result = is_ui(set->sequences(), active, a.delta, a.budget);
    meta["verifier"] = "ui-exhaustive";
    if (result.status == UiStatus::Unverified) {
      result = is_ui_sampled(set->sequences(), active, a.delta, a.samples, a.seed);
      meta["verifier"] = "ui-sampled";
      meta["seed"] = std::to_string(a.seed);
      meta["samples"] = std::to_string(a.samples);
    }
    ok = result.status == UiStatus::Verified;
  }
  if (!ok) {
    std::cerr << "verification failed for the constructed set\n";
    return kFail;
  }
  emit(a.format == "json" ? write_sequence_set_json(*set, meta) : write_sequence_set(*set, meta), a.out);
  return kPass;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string mode;
  std::string in;
  std::optional<std::size_t> delta;
  std::optional<std::size_t> k;
  std::uint64_t budget = kDefaultUiBudget;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
};

int report(bool pass, json body) {
  json out;
  out["result"] = pass ? "PASS" : "FAIL";
  for (auto& [key, value] : body.items()) out[key] = value;
  std::cout << out.dump() << "\n";
  return pass ? kPass : kFail;
}

int run_verify(const VerifyArgs& a) {
  auto in = open_input(a.in);
  if (a.mode == "pcac" || a.mode == "ui") {
    const auto file = read_sequence_file(in);
    const std::size_t delta = a.delta.value_or(file.delta);
    if (file.sequences.empty()) return report(true, {{"sequences", 0}});
    if (delta >= file.n) throw UsageError("delta must be below the period");
    if (a.mode == "pcac") {
      const auto check = is_pcac(file.sequences, delta);
      if (!check) {
        const auto& w = *check.witness;
        return report(false, {{"delta", delta},
                              {"witness", {{"x", w.x}, {"y", w.y}, {"shift", w.shift}, {"count", w.count}}}});
      }
      for (std::size_t i = 0; i < file.sequences.size(); ++i) {
        if (file.sequences[i].weight() != file.k) {
          return report(false, {{"delta", delta},
                                {"witness", {{"sequence", i}, {"weight", file.sequences[i].weight()},
                                             {"expected_weight", file.k}}}});
        }
      }
      return report(true, {{"delta", delta}, {"sequences", file.sequences.size()}});
    }
    const std::size_t k = a.k.value_or(file.k);
    auto result = is_ui(file.sequences, k, delta, a.budget);
    if (result.status == UiStatus::Unverified && a.samples > 0) {
      result = is_ui_sampled(file.sequences, k, delta, a.samples, a.seed);
    }
    json body{{"k", k}, {"delta", delta}, {"configurations", result.configurations}, {"sampled", result.sampled}};
    if (result.status == UiStatus::Violated) {
      body["witness"] = {{"users", result.witness->users}, {"shifts", result.witness->shifts}};
      return report(false, body);
    }
    if (result.status == UiStatus::Verified && !result.sampled) return report(true, body);
    json out{{"result", "UNVERIFIED"}};
    for (auto& [key, value] : body.items()) out[key] = value;
    out["configurations_required"] = ui_configuration_count(file.sequences.size(), k, delta);
    out["hint"] = "exhaustive check exceeds --budget; is_pcac is a sufficient condition";
    std::cout << out.dump() << "\n";
    return kUnverified;
  }
  if (a.mode == "packing") {
    const auto file = read_packing(in);
    const std::size_t delta = a.delta.value_or(file.delta);
    if (delta >= file.n) throw UsageError("delta must be below n");
    const auto check = is_packing(file.members, delta);
    if (!check) {
      const auto& c = *check.collision;
      return report(false, {{"delta", delta},
                            {"witness", {{"first", c.first}, {"second", c.second}, {"edge", {c.edge.u, c.edge.v}}}}});
    }
    return report(true, {{"delta", delta}, {"members", file.members.size()}});
  }
  if (a.mode == "dds") {
    const auto file = read_dds(in);
    const auto check = is_dds(file.blocks, file.n);
    if (!check) {
      const auto& w = *check.collision;
      return report(false, {{"witness",
                             {{"residue", w.residue},
                              {"first", {{"block", w.first_block}, {"pair", {w.first.first, w.first.second}}}},
                              {"second", {{"block", w.second_block}, {"pair", {w.second.first, w.second.second}}}}}}});
    }
    return report(true, {{"difference_family", is_difference_family(file.blocks, file.n)}});
  }
  if (a.mode == "dts") {
    const auto blocks = read_dts(in);
    const auto check = is_dts(blocks);
    if (!check) return report(false, {{"witness", {{"repeated_difference", *check.repeated_difference}}}});
    std::int64_t scope = 0;
    for (const auto& b : blocks) scope = std::max(scope, b.back());
    return report(true, {{"scope", scope}});
  }
  throw UsageError("unknown mode " + a.mode);
}

// ---- bounds ----------------------------------------------------------------

const std::vector<std::pair<std::size_t, std::vector<std::size_t>>>& table3_columns() {
  static const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> columns{
      {4, {13, 37, 61, 73, 97, 109, 157, 181, 193, 229, 241, 277}},
      {5, {41, 61, 101, 181, 241, 281, 401, 421, 461, 521, 541, 601}},
      {6, {31, 151, 181, 211, 241, 271, 331, 421, 541, 571, 601, 631}},
      {7, {337, 379, 421, 463, 547, 631, 673, 757, 883, 967, 1009, 1051}},
  };
  return columns;
}

struct BoundsArgs {
  std::size_t n = 0;
  std::size_t k = 3;
  std::optional<double> delta;
  std::string convention;
  bool table2 = false;
  bool table3 = false;
  std::uint64_t budget = 10'000'000;
  std::string out;
};

json bounds_json(const BoundsReport& r) {
  json j{{"n", r.n}, {"k", r.k}, {"delta", r.delta}, {"lower", r.lower}};
  j["upper"] = r.upper ? json(*r.upper) : json(nullptr);
  if (r.exact) j["exact"] = *r.exact;
  if (r.upper_real) j["upper_real"] = *r.upper_real;
  return j;
}

int run_bounds(const BoundsArgs& a) {
  if (a.table2) {
    std::ostringstream csv;
    csv << "# pcac-table2-csv v1\n";
    csv << "n,delta,lower,upper,upper_real\n";
    for (std::size_t n = 200; n <= 3600; n += 200) {
      const auto r = bounds_weight3(n, std::sqrt(static_cast<double>(n)));
      csv << n << "," << r.delta << "," << r.lower << "," << *r.upper << "," << *r.upper_real << "\n";
    }
    emit(csv.str(), a.out);
    return kPass;
  }
  if (a.table3) {
    std::ostringstream csv;
    csv << "# pcac-table3-csv v1\n";
    csv << "n,k,r,value,integer_delta,code_size,verified,status,nodes\n";
    bool all = true;
    for (const auto& [k, ns] : table3_columns()) {
      for (std::size_t n : ns) {
        const auto row = table3_row(n, k, a.budget);
        all = all && row.verified;
        csv << n << "," << k << "," << row.r << "," << row.value << "," << row.integer_delta << ","
            << row.code_size << "," << (row.verified ? "true" : "false") << "," << to_string(row.search.status)
            << "," << row.search.nodes << "\n";
      }
    }
    emit(csv.str(), a.out);
    return all ? kPass : kUnverified;
  }

  if (a.n == 0) throw UsageError("--n is required");
  double delta = 0;
  if (a.convention == "real-sqrt") {
    delta = std::sqrt(static_cast<double>(a.n));
  } else if (a.convention == "integer") {
    delta = std::floor(std::sqrt(static_cast<double>(a.n)));
  } else if (!a.convention.empty()) {
    throw UsageError("--delta-convention must be real-sqrt or integer");
  } else if (a.delta) {
    delta = *a.delta;
  } else {
    throw UsageError("give --delta or --delta-convention");
  }
  if (delta < 0) throw UsageError("delta must be non-negative");
  if (delta >= static_cast<double>(a.n)) throw UsageError("delta must be below n");

  json out;
  if (a.k == 2) {
    // the shift bound acts through whole slots
    out = bounds_json(bounds_weight2(a.n, static_cast<std::size_t>(std::floor(delta))));
  } else if (a.k == 3) {
    if (delta >= static_cast<double>(delta_collapse_threshold(a.n))) {
      out = {{"n", a.n}, {"k", 3}, {"delta", delta}, {"collapse", true},
             {"equivalent_delta", a.n - 1},
             {"note", "delta >= floor(n/2): M_delta(n,3) = M(n,3), the unrestricted CAC maximum"}};
    } else {
      out = bounds_json(bounds_weight3(a.n, delta));
    }
  } else {
    throw UsageError("bounds are available for k = 2 and k = 3 (use --table3 for DF-based rows)");
  }
  out["threshold"] = delta_collapse_threshold(a.n);
  emit(out.dump() + "\n", a.out);
  return kPass;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  std::string task;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::size_t r = 0;
  std::uint64_t budget = kDefaultSearchBudget;
  std::string out;
};

int run_search(const SearchArgs& a) {
  if (a.n == 0 || a.k == 0) throw UsageError("--n and --k are required");
  if (a.task == "max-packing") {
    const auto res = max_packing_exact(a.n, a.k, a.delta, a.budget);
    json members = json::array();
    for (const auto& m : res.members) members.push_back(std::vector<residue_t>(m.elements().begin(), m.elements().end()));
    json j{{"task", a.task}, {"n", a.n}, {"k", a.k}, {"delta", a.delta}, {"size", res.size},
           {"complete", res.complete}, {"nodes", res.nodes}, {"root_bound", res.root_bound},
           {"members", members}};
    std::cout << j.dump() << "\n";
    if (!a.out.empty()) emit(write_packing(SupportingGraphPacking(a.n, a.delta, res.members)), a.out);
    return res.complete ? kPass : kUnverified;
  }
  if (a.task == "dds" || a.task == "df") {
    std::size_t r = a.r;
    if (a.task == "df") {
      if (a.k < 2 || (a.n - 1) % (a.k * (a.k - 1)) != 0) throw UsageError("a DF needs k(k-1) | n-1");
      r = (a.n - 1) / (a.k * (a.k - 1));
    } else if (r == 0) {
      throw UsageError("--r is required for dds");
    }
    const auto res = df_search(a.n, a.k, r, a.budget);
    json j{{"task", a.task}, {"n", a.n}, {"k", a.k}, {"r", r}, {"status", to_string(res.status)},
           {"nodes", res.nodes}};
    if (res.dds) {
      j["blocks"] = blocks_json(res.dds->blocks());
      j["difference_family"] = res.dds->is_difference_family();
    }
    std::cout << j.dump() << "\n";
    if (res.dds && !a.out.empty()) emit(write_dds(*res.dds), a.out);
    switch (res.status) {
      case SearchStatus::Found:
        return kPass;
      case SearchStatus::Exhausted:
        return kFail;
      case SearchStatus::BudgetExceeded:
        return kUnverified;
    }
  }
  throw UsageError("unknown task " + a.task);
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::uint64_t users = 0;
  std::size_t active = 0;
  std::size_t delta = 0;
  std::string sweep;
  std::uint64_t pmin = 0;
  std::uint64_t pmax = 0;
  std::uint64_t search_budget = 1'000'000;
  std::string out;
};

std::string csv_row(const ComparisonRow& row) {
  std::ostringstream s;
  s << row.approach << "," << (row.period ? std::to_string(*row.period) : "infeasible") << "," << row.users << ","
    << row.active << "," << row.delta << "," << row.parameters << "," << (row.verified ? "true" : "false");
  return s.str();
}

int run_compare(const CompareArgs& a) {
  std::ostringstream csv;
  if (a.sweep.empty()) {
    if (a.users == 0 || a.active == 0) throw UsageError("--users and --active are required");
    CompareOptions opt;
    opt.search_budget = a.search_budget;
    csv << "# pcac-compare-csv v1\n";
    csv << "approach,n,N,k,Delta,parameters,verified\n";
    for (const auto& row : compare_periods(a.users, a.active, a.delta, opt)) csv << csv_row(row) << "\n";
    emit(csv.str(), a.out);
    return kPass;
  }

  // sq-*: k = p^2 + 1 active users, N = k; cube-*: k = p, N = p^3
  const bool square = a.sweep == "sq-pow" || a.sweep == "sq-lin";
  if (!square && a.sweep != "cube-lin" && a.sweep != "cube-sq") throw UsageError("unknown sweep " + a.sweep);
  const std::uint64_t lo = a.pmin ? a.pmin : (square ? 3 : 31);
  const std::uint64_t hi = a.pmax ? a.pmax : (square ? 73 : 97);
  CompareOptions opt;
  opt.search_budget = 0;
  opt.construct_limit = 0;
  opt.max_q = 1u << 14;
  csv << "# pcac-compare-sweep v1\n";
  csv << "sweep,p,approach,n,N,k,Delta,parameters,verified\n";
  for (std::uint64_t p = lo; p <= hi; ++p) {
    if (!is_prime(p)) continue;
    std::size_t k = 0, delta = 0;
    std::uint64_t users = 0;
    if (square) {
      k = p * p + 1;
      users = k;
      delta = a.sweep == "sq-pow" ? static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(p), 1.5)))
                                 : k - 2;
    } else {
      k = p;
      users = p * p * p;
      delta = a.sweep == "cube-lin" ? p - 1 : p * p - 1;
    }
    for (const auto& row : compare_periods(users, k, delta, opt)) {
      csv << a.sweep << "," << p << "," << csv_row(row) << "\n";
    }
  }
  emit(csv.str(), a.out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partially conflict-avoiding codes and user-irrepressible protocol sequences"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a sequence set and verify it before writing");
  construct->add_option("--method", ca.method, "tdma | gf | singer | bose | skolem | dds-file")
      ->required()
      ->check(CLI::IsMember({"tdma", "gf", "singer", "bose", "skolem", "dds-file"}));
  construct->add_option("--k", ca.k, "active users (tdma: set size; gf: UI target)");
  construct->add_option("--delta", ca.delta, "shift bound");
  construct->add_option("--q", ca.q, "prime power (gf, singer, bose)");
  construct->add_option("--m", ca.m, "polynomial degree bound (gf)");
  construct->add_option("--r", ca.r, "Skolem order (skolem)");
  construct->add_option("--n", ca.n, "period for skolem (default 2*scope+1)");
  construct->add_option("--dds", ca.dds_path, "DDS file (dds-file)");
  construct->add_option("--out", ca.out, "output file (default stdout)");
  construct->add_option("--format", ca.format, "txt | json")->check(CLI::IsMember({"txt", "json"}));
  construct->add_option("--budget", ca.budget, "exhaustive UI configuration budget");
  construct->add_option("--samples", ca.samples, "sampled UI checks when over budget");
  construct->add_option("--seed", ca.seed, "seed for sampled checks");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a file: PASS (0), FAIL (1), UNVERIFIED (2)");
  verify->add_option("--mode", va.mode, "pcac | ui | packing | dds | dts")
      ->required()
      ->check(CLI::IsMember({"pcac", "ui", "packing", "dds", "dts"}));
  verify->add_option("--in", va.in, "input file")->required();
  verify->add_option("--delta", va.delta, "shift bound (default: from the file header)");
  verify->add_option("--k", va.k, "active users for ui (default: header k)");
  verify->add_option("--budget", va.budget, "exhaustive UI configuration budget");
  verify->add_option("--samples", va.samples, "sampled UI checks when over budget (still UNVERIFIED on pass)");
  verify->add_option("--seed", va.seed, "seed for sampled checks");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds on M_delta(n,k) as JSON, or table sweeps as CSV");
  bounds->add_option("--n", ba.n, "period");
  bounds->add_option("--k", ba.k, "weight (2 or 3)");
  bounds->add_option("--delta", ba.delta, "shift bound, may be real for k = 3");
  bounds->add_option("--delta-convention", ba.convention, "real-sqrt | integer: delta = sqrt(n) or floor(sqrt(n))");
  bounds->add_flag("--table2", ba.table2, "weight-3 bounds at delta = sqrt(n), n = 200..3600");
  bounds->add_flag("--table3", ba.table3, "DF-based lower bounds at delta = sqrt(n), k = 4..7");
  bounds->add_option("--budget", ba.budget, "df_search node budget per --table3 row");
  bounds->add_option("--out", ba.out, "output file (default stdout)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "exact packing search or DDS/DF backtracking");
  search->add_option("--task", sa.task, "max-packing | dds | df")
      ->required()
      ->check(CLI::IsMember({"max-packing", "dds", "df"}));
  search->add_option("--n", sa.n, "modulus");
  search->add_option("--k", sa.k, "member / block size");
  search->add_option("--delta", sa.delta, "shift bound (max-packing)");
  search->add_option("--r", sa.r, "number of blocks (dds)");
  search->add_option("--budget", sa.budget, "search-tree node budget");
  search->add_option("--out", sa.out, "write the found packing or DDS in text format");

  CompareArgs cpa;
  auto* compare = app.add_subcommand("compare", "minimal periods of the PCAC, GF and TDMA approaches as CSV");
  compare->add_option("--users", cpa.users, "potential users N");
  compare->add_option("--active", cpa.active, "active users K");
  compare->add_option("--delta", cpa.delta, "shift bound");
  compare->add_option("--sweep", cpa.sweep, "sq-pow (k=p^2+1, N=k, Delta=floor(p^1.5)) | sq-lin (Delta=k-2) | "
                  "cube-lin (k=p, N=p^3, Delta=p-1) | cube-sq (Delta=p^2-1)");
  compare->add_option("--pmin", cpa.pmin, "smallest prime p of the sweep");
  compare->add_option("--pmax", cpa.pmax, "largest prime p of the sweep");
  compare->add_option("--search-budget", cpa.search_budget, "df_search budget backing the pcac-dds row");
  compare->add_option("--out", cpa.out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return run_construct(ca);
    if (*verify) return run_verify(va);
    if (*bounds) return run_bounds(ba);
    if (*search) return run_search(sa);
    if (*compare) return run_compare(cpa);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
