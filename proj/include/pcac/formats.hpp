#pragma once

// Text and JSON file formats; see docs/formats.md. Readers accept '#'
// comment lines anywhere and report malformed input as FormatError with a
// line number.

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcac/codes.hpp"
#include "pcac/diffsets.hpp"
#include "pcac/packing.hpp"
#include "pcac/seqcore.hpp"

namespace pcac {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Provenance pairs, written as "# key=value" lines or a JSON object.
using Metadata = std::map<std::string, std::string>;

/// A sequence-set file as read, before any invariant is enforced, so that
/// verify can report a damaged file instead of refusing it.
struct SequenceFile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::vector<BinarySequence> sequences;
  Metadata metadata;
};

std::string write_sequence_set(const SequenceSet& set, const Metadata& metadata = {});
std::string write_sequence_set_json(const SequenceSet& set, const Metadata& metadata = {});
/// Reads either variant; JSON is recognized by a leading '{'.
SequenceFile read_sequence_file(std::istream& in);

struct DdsFile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Block> blocks;  // unchecked; feed to is_dds or DisjointDifferenceSet
};

std::string write_dds(const DisjointDifferenceSet& dds);
DdsFile read_dds(std::istream& in);

struct PackingFile {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t delta = 0;
  std::vector<CharacteristicSet> members;
};

std::string write_packing(const SupportingGraphPacking& packing);
PackingFile read_packing(std::istream& in);

std::string write_dts(const DifferenceTriangleSet& dts);
std::vector<std::vector<std::int64_t>> read_dts(std::istream& in);

}  // namespace pcac
