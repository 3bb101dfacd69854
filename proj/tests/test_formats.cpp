#include <sstream>

#include "doctest.h"
#include "pcac/constructions.hpp"
#include "pcac/formats.hpp"

using namespace pcac;

namespace {

const DisjointDifferenceSet kFamily(19, {{0, 4, 5}, {0, 6, 8}, {0, 7, 10}});

template <typename F>
std::string error_of(F&& read) {
  try {
    read();
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sequence sets round trip through text and JSON") {
  const auto set = pcac_ui(kFamily, 5);
  const Metadata meta{{"method", "dds-file"}, {"seed", "1"}};
  for (const std::string& text : {write_sequence_set(set, meta), write_sequence_set_json(set, meta)}) {
    std::istringstream in(text);
    const auto file = read_sequence_file(in);
    CHECK(file.n == 19);
    CHECK(file.k == 3);
    CHECK(file.delta == 5);
    CHECK(file.metadata == meta);
    CHECK(SequenceSet(file.n, file.k, file.delta, file.sequences) == set);
  }
}

TEST_CASE("text sequence files accept comments and blank lines anywhere") {
  std::istringstream in("# note\n\n7 3 1 2\n  # between rows\n1101000\n\n0011010\r\n");
  const auto file = read_sequence_file(in);
  CHECK(file.sequences.size() == 2);
  CHECK(file.sequences[1].to_string() == "0011010");
}

TEST_CASE("malformed sequence files name the line") {
  auto read = [](const std::string& text) {
    return error_of([&] {
      std::istringstream in(text);
      read_sequence_file(in);
    });
  };
  CHECK(read("7 3 1 2\n1101000\n11x1000\n").find("line 3") == 0);
  CHECK(read("7 3 1 2\n1101000\n").find("announces 2 rows") != std::string::npos);
  CHECK(read("7 3 1\n").find("line 1") == 0);
  CHECK(read("7 3 one 1\n1101000\n").find("line 1") == 0);
  CHECK(read("").find("empty") == 0);
  CHECK(read("{\"format\": \"other\"}").find("not a sequence-set") != std::string::npos);
  CHECK(read("{\"format\": ").find("invalid JSON") == 0);
}

TEST_CASE("DDS files round trip and report bad residues") {
  std::istringstream in(write_dds(kFamily));
  const auto file = read_dds(in);
  CHECK(file.n == 19);
  CHECK(file.k == 3);
  CHECK(DisjointDifferenceSet(file.n, file.blocks) == kFamily);
  const auto err = error_of([] {
    std::istringstream bad("19 3 2\n0 4 5\n0 6 19\n");
    read_dds(bad);
  });
  CHECK(err.find("line 3") == 0);
  CHECK(err.find("outside Z_n") != std::string::npos);
}

TEST_CASE("packing files round trip") {
  const auto packing = dds_to_packing(kFamily, 5);
  std::istringstream in(write_packing(packing));
  const auto file = read_packing(in);
  CHECK(file.n == 19);
  CHECK(file.delta == 5);
  REQUIRE(file.members.size() == 9);
  CHECK(std::equal(file.members.begin(), file.members.end(), packing.members().begin()));
  const auto err = error_of([] {
    std::istringstream bad("7 3 1 1\n0 1 1\n");
    read_packing(bad);
  });
  CHECK(err.find("line 2") == 0);
}

TEST_CASE("DTS files round trip") {
  const auto dts = skolem_dts(5);
  std::istringstream in(write_dts(dts));
  const auto blocks = read_dts(in);
  CHECK(DifferenceTriangleSet(blocks).blocks().size() == 5);
  CHECK(std::equal(blocks.begin(), blocks.end(), dts.blocks().begin()));
}
