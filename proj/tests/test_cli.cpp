#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmlab/cnf.hpp"
#include "tmlab/commands.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/report.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/suites.hpp"

using namespace tmlab;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "tmlab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("tmlab-cli-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("key file reading") {
  std::istringstream a("3 1\n# comment\n2  0 # trailing\n");
  KeyList k = read_key_file(a);
  CHECK(k.keys == std::vector<std::uint64_t>{3, 1, 2, 0});
  CHECK(k.width == 2);
  std::istringstream b("5\n");
  CHECK(read_key_file(b, 8).width == 8);
  std::istringstream c("1 x\n");
  CHECK_THROWS_AS(read_key_file(c), ParseError);
  std::istringstream d("9\n");
  CHECK_THROWS_AS(read_key_file(d, 3), ParseError);
  std::istringstream e("0 0\n");
  CHECK(read_key_file(e).width == 1);
}

TEST_CASE("sort command") {
  TempDir dir;
  SUBCASE("one key is returned unchanged with no stages") {
    std::string keys = dir.write("one.txt", "5\n");
    std::string report = dir.path("r.jsonl");
    Result r = cli({"--report", report, "sort", keys});
    CHECK(r.status == kExitOk);
    CHECK(r.out == "5\n");
    auto recs = json_lines(slurp(report));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["command"] == "sort");
    CHECK(recs[0]["details"]["stage_count"] == 0);
  }
  SUBCASE("64 random keys are sorted with lg m stages") {
    std::mt19937_64 rng(4);
    std::vector<std::uint64_t> v;
    std::string text;
    for (int i = 0; i < 64; ++i) {
      v.push_back(rng() % 256);
      text += std::to_string(v.back()) + (i % 8 == 7 ? "\n" : " ");
    }
    std::sort(v.begin(), v.end());
    std::string expect;
    for (auto k : v) expect += std::to_string(k) + "\n";
    std::string keys = dir.write("k.txt", text);
    std::string report = dir.path("r.jsonl");
    Result r = cli({"--report", report, "sort", keys, "--width", "8"});
    CHECK(r.status == kExitOk);
    CHECK(r.out == expect);
    auto recs = json_lines(slurp(report));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["details"]["stage_count"] == 6);
    CHECK(recs[0]["stats"]["outcome"] == "accept");
    CHECK(recs[0]["parameters"]["width"] == 8);
  }
  SUBCASE("unreadable file and fuel exhaustion") {
    CHECK(cli({"sort", dir.path("missing.txt")}).status == kExitError);
    std::string keys = dir.write("k.txt", "3 2 1 0 7 6 5 4\n");
    Result r = cli({"--fuel-factor", "0.01", "sort", keys});
    CHECK(r.status == kExitIndeterminate);
    CHECK(r.err.find("fuel") != std::string::npos);
  }
  SUBCASE("output file") {
    std::string keys = dir.write("k.txt", "2 1\n");
    CHECK(cli({"sort", keys, "-o", dir.path("out.txt")}).status == kExitOk);
    CHECK(slurp(dir.path("out.txt")) == "1\n2\n");
  }
}

TEST_CASE("sat command statuses") {
  TempDir dir;
  Result sat = cli({"sat", dir.write("s.cnf", "p cnf 1 1\n1 0\n")});
  CHECK(sat.status == kExitSat);
  CHECK(sat.out == "s SATISFIABLE\nv 1 0\n");
  CHECK(cli({"sat", dir.write("u.cnf", "p cnf 1 2\n1 0\n-1 0\n")}).status == kExitUnsat);
  CHECK(cli({"sat", dir.write("bad.cnf", "p cnf 1 1\n2 0\n")}).status == kExitError);
  CHECK(cli({"sat", dir.write("bits.txt", "1010100\n")}).status == kExitSat);
  Result bad_bits = cli({"sat", dir.write("trunc.txt", "10101\n")});
  CHECK(bad_bits.status == kExitError);
  CHECK(bad_bits.err.find("missing-terminator") != std::string::npos);
  CHECK(cli({"--fuel-factor", "0.001", "sat", dir.path("s.cnf")}).status == kExitIndeterminate);
}

TEST_CASE("sat report fields") {
  TempDir dir;
  std::string f = dir.write("f.cnf", "p cnf 3 2\n1 -2 0\n2 3 0\n");
  std::string report = dir.path("r.jsonl");
  REQUIRE(cli({"--report", report, "sat", f}).status == kExitSat);
  auto recs = json_lines(slurp(report));
  REQUIRE(recs.size() == 1);
  const auto& r = recs[0];
  CHECK(r["parameters"]["v"] == 3);
  CHECK(r["stats"]["guess_bits"] == 3);
  CHECK(r["ratios"]["steps/(n lg n)"].get<double>() > 0);
  CHECK(r["details"]["verdict"] == "accept");
}

TEST_CASE("sat batch agrees with the reference") {
  TempDir dir;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const std::size_t v = 1 + rng() % 5;
    CnfFormula f = random_formula(rng, v, 1 + rng() % (3 * v), 3);
    const int expect = decide_sat_reference(f) ? kExitSat : kExitUnsat;
    CHECK(cli({"sat", dir.write("b.cnf", emit_dimacs(f))}).status == expect);
  }
}

TEST_CASE("encode and decode round trip") {
  TempDir dir;
  std::string f = dir.write("f.cnf", "p cnf 2 2\n1 -2 0\n2 0\n");
  Result enc = cli({"encode", f});
  REQUIRE(enc.status == kExitOk);
  CHECK(enc.out == "11010001110000010000\n");
  Result dec = cli({"decode", dir.write("bits.txt", enc.out)});
  REQUIRE(dec.status == kExitOk);
  CHECK(parse_dimacs(std::string_view(dec.out)) == parse_dimacs(std::string_view("p cnf 2 2\n1 -2 0\n2 0\n")));
  Result dump = cli({"encode", "--encoding-dump", f});
  CHECK(dump.out.rfind("prefix v=2 k=2: 11 0 10\n", 0) == 0);
  CHECK(cli({"decode", dir.write("junk.txt", "p cnf")}).status == kExitError);
}

TEST_CASE("bench command") {
  TempDir dir;
  std::string report = dir.path("fit.jsonl");
  Result one = cli({"--report", report, "bench", "sort", "--m-lo", "16", "--m-hi", "16", "--widths", "8"});
  CHECK(one.status == kExitOk);
  auto recs = json_lines(slurp(report));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["details"]["fit"]["spread"] == 1.0);
  CHECK(recs[0]["details"]["published"] == false);

  Result tight = cli({"bench", "sort", "--m-lo", "8", "--m-hi", "64", "--widths", "8,16", "--threshold", "1.0001"});
  CHECK(tight.status == kExitError);
  CHECK(cli({"bench", "sort", "--m-lo", "12", "--m-hi", "12"}).status == kExitError);

  std::string csv = dir.path("fit.csv");
  Result grid = cli({"--report", csv, "--format", "csv", "bench", "sort", "--m-lo", "8", "--m-hi", "32", "--widths", "8"});
  CHECK(grid.status == kExitOk);
  CHECK(slurp(csv) .rfind("# bench-sort\nm,width,steps,model,ratio\n", 0) == 0);

  std::string sat_report = dir.path("sat.jsonl");
  Result sat = cli({"--report", sat_report, "--seed", "3", "bench", "sat", "--n-lo", "256", "--n-hi", "1024"});
  CHECK(sat.status == kExitOk);
  auto srec = json_lines(slurp(sat_report));
  REQUIRE(srec.size() == 1);
  CHECK(srec[0]["parameters"]["seed"] == 3);
  CHECK(srec[0]["details"]["fit"]["points"].size() == 6);
}

TEST_CASE("reports are deterministic") {
  TempDir dir;
  std::string a = dir.path("a.jsonl"), b = dir.path("b.jsonl");
  cli({"--report", a, "verify", "--only", "codec,projection"});
  cli({"--report", b, "verify", "--only", "codec,projection"});
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("verify routing and fault injection") {
  Result only = cli({"verify", "--only", "projection"});
  CHECK(only.status == kExitOk);
  CHECK(only.out.rfind("PASS projection", 0) == 0);
  CHECK(std::count(only.out.begin(), only.out.end(), '\n') == 1);

  Result fault = cli({"verify", "--only", "sort", "--inject", "flip-compare"});
  CHECK(fault.status == kExitError);
  CHECK(fault.out.find("FAIL sort") != std::string::npos);
  CHECK(fault.out.find("reproduce: tmlab verify --only sort --seed 1 --inject flip-compare") !=
        std::string::npos);
  CHECK(fault.out.find("got=[") != std::string::npos);

  CHECK(cli({"verify", "--only", "nope"}).status == kExitError);
  Result list = cli({"verify", "--list"});
  CHECK(list.status == kExitOk);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 10);
}

TEST_CASE("environment overrides") {
  TempDir dir;
  std::string report = dir.path("env.jsonl");
  setenv("TMLAB_SEED", "9", 1);
  setenv("TMLAB_REPORT", report.c_str(), 1);
  Result r = cli({"verify", "--only", "projection"});
  unsetenv("TMLAB_SEED");
  unsetenv("TMLAB_REPORT");
  CHECK(r.status == kExitOk);
  auto recs = json_lines(slurp(report));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["parameters"]["seed"] == 9);
  // A flag beats the environment.
  setenv("TMLAB_SEED", "9", 1);
  CHECK(cli({"--seed", "4", "--report", report, "verify", "--only", "projection"}).status == kExitOk);
  unsetenv("TMLAB_SEED");
  CHECK(json_lines(slurp(report))[0]["parameters"]["seed"] == 4);
}

TEST_CASE("argument errors map to status 1") {
  CHECK(cli({}).status == kExitError);
  CHECK(cli({"--format", "xml", "verify", "--list"}).status == kExitError);
  CHECK(cli({"--fuel-factor", "-1", "verify", "--list"}).status == kExitError);
  CHECK(cli({"--help"}).status == kExitOk);
}

TEST_CASE("run records") {
  RunRecord r;
  r.command = "x";
  CHECK_THROWS_AS(r.add_ratio("bad", 1, 0), std::invalid_argument);
  r.add_ratio("half", 1, 2);
  CHECK(r.to_json()["ratios"]["half"] == 0.5);
  Report rep;
  rep.add(r);
  rep.add(r);
  std::ostringstream s;
  rep.write(s, ReportFormat::Csv);
  CHECK(s.str() == "# x\nparameters,ratios.half\n{},0.5\n# x\nparameters,ratios.half\n{},0.5\n");
}
