// Runs the pcac executable and checks exit codes and output.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PCAC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string tmp(const std::string& name) {
  fs::create_directories(PCAC_TEST_TMP);
  return (fs::path(PCAC_TEST_TMP) / name).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

nlohmann::json parse(const std::string& out) { return nlohmann::json::parse(out); }

}  // namespace

TEST_CASE("construct from a DDS file and verify") {
  const auto dds = tmp("family.txt");
  write(dds, "# nineteen points\n19 3 3\n0 4 5\n0 6 8\n0 7 10\n");
  const auto seqs = tmp("family_seqs.txt");
  const auto c = run("construct --method dds-file --dds " + dds + " --delta 5 --out " + seqs);
  REQUIRE(c.code == 0);
  std::ifstream in(seqs);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.find("19 3 5 9\n1000110000000000000\n") != std::string::npos);

  auto v = run("verify --mode pcac --in " + seqs);
  CHECK(v.code == 0);
  CHECK(parse(v.out)["result"] == "PASS");
  v = run("verify --mode ui --in " + seqs + " --k 3");
  CHECK(v.code == 0);
  CHECK(parse(v.out)["configurations"] == 18144);
  v = run("verify --mode ui --in " + seqs + " --k 3 --budget 100");
  CHECK(v.code == 2);
  CHECK(parse(v.out)["result"] == "UNVERIFIED");
  v = run("verify --mode pcac --in " + seqs + " --delta 9");
  CHECK(v.code == 1);
  CHECK(parse(v.out)["witness"]["count"] > 1);
  v = run("verify --mode dds --in " + dds);
  CHECK(v.code == 0);
  CHECK(parse(v.out)["difference_family"] == true);
}

TEST_CASE("a flipped bit is caught with a witness") {
  const auto seqs = tmp("flip.txt");
  REQUIRE(run("construct --method skolem --r 2 --delta 1 --out " + seqs).code == 0);
  std::ifstream in(seqs);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  const auto last = text.rfind('\n', text.size() - 2) + 1;
  text[text.find('0', last)] = '1';
  write(seqs, text);
  const auto v = run("verify --mode pcac --in " + seqs);
  CHECK(v.code == 1);
  CHECK(parse(v.out)["result"] == "FAIL");
  CHECK(parse(v.out).contains("witness"));
}

TEST_CASE("every construction method round-trips through verify") {
  const std::vector<std::pair<std::string, std::string>> matrix{
      {"--method tdma --k 4 --delta 2", "ui"},
      {"--method gf --q 3 --m 2 --delta 1 --format json", "ui --k 3"},
      {"--method singer --q 3 --delta 2", "pcac"},
      {"--method bose --q 4 --delta 1", "pcac"},
      {"--method skolem --r 4 --delta 3 --n 40", "pcac"},
  };
  int i = 0;
  for (const auto& [args, mode] : matrix) {
    const auto path = tmp("method" + std::to_string(i++) + ".out");
    const auto c = run("construct " + args + " --out " + path);
    CHECK_MESSAGE(c.code == 0, args);
    const auto v = run("verify --mode " + mode + " --in " + path);
    CHECK_MESSAGE(v.code == 0, args);
    CHECK(run("construct " + args).out == run("construct " + args).out);
  }
  const auto singer = run("construct --method singer --q 3 --delta 1");
  CHECK(singer.out.find("\n13 4 1 6\n") != std::string::npos);
}

TEST_CASE("packing and DTS verification") {
  const auto good = tmp("packing.txt");
  write(good, "13 3 1 2\n0 1 3\n0 4 9\n");
  CHECK(run("verify --mode packing --in " + good).code == 0);
  const auto bad = tmp("packing_bad.txt");
  write(bad, "13 3 1 2\n0 1 3\n1 2 4\n");
  const auto v = run("verify --mode packing --in " + bad);
  CHECK(v.code == 1);
  CHECK(parse(v.out)["witness"]["first"] == 0);
  const auto dts = tmp("dts.txt");
  write(dts, "2 2\n0 1 3\n0 2 7\n");
  CHECK(run("verify --mode dts --in " + dts).code == 1);
}

TEST_CASE("bounds output") {
  auto b = run("bounds --n 19 --k 3 --delta 5");
  REQUIRE(b.code == 0);
  CHECK(parse(b.out)["lower"] == 9);
  CHECK(parse(b.out)["upper"] == 13);
  b = run("bounds --n 19 --k 3 --delta 12");
  CHECK(parse(b.out)["collapse"] == true);
  b = run("bounds --n 400 --k 3 --delta-convention real-sqrt");
  CHECK(parse(b.out)["lower"] == 1254);
  b = run("bounds --table2");
  CHECK(b.out.rfind("# pcac-table2-csv v1\n", 0) == 0);
  CHECK(b.out.find("\n3600,60,35341,") != std::string::npos);
}

TEST_CASE("search output") {
  auto s = run("search --task max-packing --n 13 --k 3 --delta 1");
  REQUIRE(s.code == 0);
  CHECK(parse(s.out)["size"] == 12);
  const auto out = tmp("df.txt");
  s = run("search --task df --n 31 --k 6 --out " + out);
  CHECK(s.code == 0);
  CHECK(run("verify --mode dds --in " + out).code == 0);
  s = run("search --task dds --n 13 --k 4 --r 1");
  CHECK(s.code == 0);
}

TEST_CASE("compare output") {
  const auto c = run("compare --users 9 --active 3 --delta 5");
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("# pcac-compare-csv v1\napproach,n,N,k,Delta,parameters,verified\n", 0) == 0);
  CHECK(c.out.find("pcac-dds,19,") != std::string::npos);
  const auto s = run("compare --sweep cube-lin --pmin 31 --pmax 37");
  CHECK(s.code == 0);
  CHECK(s.out.find("cube-lin,37,tdma,1874161,") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 3") {
  CHECK(run("").code == 3);
  CHECK(run("construct --method nope").code == 3);
  CHECK(run("verify --mode pcac --in /nonexistent/file").code == 3);
  const auto bad = tmp("malformed.txt");
  write(bad, "7 3 1 2\n1101000\n");
  CHECK(run("verify --mode pcac --in " + bad).code == 3);
  CHECK(run("bounds --n 19 --k 5 --delta 2").code == 3);
  CHECK(run("search --task df --n 14 --k 4").code == 3);
}
