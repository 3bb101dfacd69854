#include "pcac/formats.hpp"

#include <sstream>

#include "json.hpp"

namespace pcac {

namespace {

constexpr const char* kSequenceTag = "pcac-sequence-set";
constexpr int kSequenceVersion = 1;

// Non-comment, non-blank lines with their 1-based line numbers; "# key=value"
// tokens found in comments go to `metadata`.
struct Lines {
  std::vector<std::pair<std::size_t, std::string>> body;
  Metadata metadata;
};

Lines split_lines(std::istream& in) {
  Lines out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream tokens(line.substr(first + 1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos && eq > 0) out.metadata[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    out.body.emplace_back(number, line.substr(first));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

std::vector<std::int64_t> integers(const std::pair<std::size_t, std::string>& line) {
  std::istringstream s(line.second);
  std::vector<std::int64_t> out;
  std::string tok;
  while (s >> tok) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      fail(line.first, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail(line.first, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> header(const Lines& lines, std::size_t fields, const char* layout) {
  if (lines.body.empty()) throw FormatError(std::string("empty file; expected header '") + layout + "'");
  const auto values = integers(lines.body.front());
  if (values.size() != fields) fail(lines.body.front().first, std::string("header must be '") + layout + "'");
  std::vector<std::size_t> out;
  for (auto v : values) {
    if (v < 0) fail(lines.body.front().first, "header values must be non-negative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void expect_rows(const Lines& lines, std::size_t rows) {
  if (lines.body.size() != rows + 1) {
    throw FormatError("header announces " + std::to_string(rows) + " rows, file has " +
                      std::to_string(lines.body.size() - (lines.body.empty() ? 0 : 1)));
  }
}

std::vector<residue_t> residues(const std::pair<std::size_t, std::string>& line, std::size_t count,
                                std::size_t n) {
  const auto values = integers(line);
  if (values.size() != count) {
    fail(line.first, "expected " + std::to_string(count) + " residues, got " + std::to_string(values.size()));
  }
  std::vector<residue_t> out;
  for (auto v : values) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) fail(line.first, "residue " + std::to_string(v) + " outside Z_n");
    out.push_back(static_cast<residue_t>(v));
  }
  return out;
}

SequenceFile read_sequence_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("format", std::string()) != kSequenceTag) throw FormatError("not a sequence-set JSON document");
    SequenceFile f;
    f.n = j.at("n").get<std::size_t>();
    f.k = j.at("k").get<std::size_t>();
    f.delta = j.at("delta").get<std::size_t>();
    for (const auto& s : j.at("sequences")) {
      auto x = BinarySequence::from_string(s.get<std::string>());
      if (x.period() != f.n) throw FormatError("sequence length differs from n");
      f.sequences.push_back(std::move(x));
    }
    if (j.contains("provenance")) {
      for (const auto& [key, value] : j["provenance"].items()) {
        f.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed sequence-set JSON: ") + e.what());
  }
}

}  // namespace

std::string write_sequence_set(const SequenceSet& set, const Metadata& metadata) {
  std::ostringstream out;
  out << "# " << kSequenceTag << " v" << kSequenceVersion << "\n";
  for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
  out << set.period() << " " << set.weight() << " " << set.delta() << " " << set.size() << "\n";
  for (const auto& x : set.sequences()) out << x.to_string() << "\n";
  return out.str();
}

std::string write_sequence_set_json(const SequenceSet& set, const Metadata& metadata) {
  nlohmann::ordered_json j;
  j["format"] = kSequenceTag;
  j["version"] = kSequenceVersion;
  j["n"] = set.period();
  j["k"] = set.weight();
  j["delta"] = set.delta();
  j["N"] = set.size();
  j["sequences"] = nlohmann::ordered_json::array();
  for (const auto& x : set.sequences()) j["sequences"].push_back(x.to_string());
  j["provenance"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) j["provenance"][key] = value;
  return j.dump(2) + "\n";
}

SequenceFile read_sequence_file(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '{') return read_sequence_json(in);
  const Lines lines = split_lines(in);
  const auto h = header(lines, 4, "n k Delta N");
  expect_rows(lines, h[3]);
  SequenceFile f{h[0], h[1], h[2], {}, lines.metadata};
  for (std::size_t i = 1; i < lines.body.size(); ++i) {
    const auto& [number, text] = lines.body[i];
    if (text.size() != f.n || text.find_first_not_of("01") != std::string::npos) {
      fail(number, "expected a 0/1 string of length " + std::to_string(f.n));
    }
    f.sequences.push_back(BinarySequence::from_string(text));
  }
  return f;
}

std::string write_dds(const DisjointDifferenceSet& dds) {
  std::ostringstream out;
  out << dds.modulus() << " " << dds.block_size() << " " << dds.block_count() << "\n";
  for (const Block& b : dds.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
    out << "\n";
  }
  return out.str();
}

DdsFile read_dds(std::istream& in) {
  const Lines lines = split_lines(in);
  const auto h = header(lines, 3, "n k r");
  if (h[2] == 0) throw FormatError("a DDS needs at least one block");
  expect_rows(lines, h[2]);
  DdsFile f{h[0], h[1], {}};
  for (std::size_t i = 1; i < lines.body.size(); ++i) f.blocks.push_back(residues(lines.body[i], f.k, f.n));
  return f;
}

std::string write_packing(const SupportingGraphPacking& packing) {
  std::ostringstream out;
  out << packing.modulus() << " " << packing.weight() << " " << packing.delta() << " " << packing.size() << "\n";
  for (const auto& m : packing.members()) {
    const auto e = m.elements();
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << "\n";
  }
  return out.str();
}

PackingFile read_packing(std::istream& in) {
  const Lines lines = split_lines(in);
  const auto h = header(lines, 4, "n k Delta N");
  expect_rows(lines, h[3]);
  PackingFile f{h[0], h[1], h[2], {}};
  for (std::size_t i = 1; i < lines.body.size(); ++i) {
    try {
      f.members.emplace_back(f.n, residues(lines.body[i], f.k, f.n));
    } catch (const std::invalid_argument& e) {
      fail(lines.body[i].first, e.what());
    }
  }
  return f;
}

std::string write_dts(const DifferenceTriangleSet& dts) {
  std::ostringstream out;
  out << dts.block_count() << " " << dts.order() << "\n";
  for (const auto& b : dts.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
    out << "\n";
  }
  return out.str();
}

std::vector<std::vector<std::int64_t>> read_dts(std::istream& in) {
  const Lines lines = split_lines(in);
  const auto h = header(lines, 2, "r k");
  expect_rows(lines, h[0]);
  std::vector<std::vector<std::int64_t>> blocks;
  for (std::size_t i = 1; i < lines.body.size(); ++i) {
    auto values = integers(lines.body[i]);
    if (values.size() != h[1] + 1) fail(lines.body[i].first, "expected " + std::to_string(h[1] + 1) + " integers");
    blocks.push_back(std::move(values));
  }
  return blocks;
}

}  // namespace pcac
