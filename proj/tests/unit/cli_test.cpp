#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "stringnet_cli/commands.hpp"
#include "stringnet_cli/output.hpp"

namespace fs = std::filesystem;
using stringnet::cli::read_file;
using stringnet::cli::run_cli;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name) : path(fs::temp_directory_path() / ("stringnet_cli_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "stringnet");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path &p, const std::string &s) { std::ofstream(p) << s; }

int count_lines(const std::string &s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("simulate: invalid inputs") {
  TempDir dir("sim_bad");
  CHECK(run({"simulate", "--scenario", (dir.path / "missing.json").string(), "--out", dir.path.string()}).code == 2);
  write(dir.path / "broken.json", "{ not json");
  CHECK(run({"simulate", "--scenario", (dir.path / "broken.json").string(), "--out", dir.path.string()}).code == 2);
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("simulate: time limit gives exit 3 and a timeout event") {
  TempDir dir("sim_timeout");
  const auto r = run({"simulate", "--scenario", fixture::scenario_path("single.json"), "--max-time", "1", "--no-plot",
                      "--out", dir.path.string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("timeout") != std::string::npos);
  const auto events = read_file(dir.path / "events.csv");
  CHECK(events.find(",timeout,") != std::string::npos);
  CHECK(fs::exists(dir.path / "trajectory.csv"));
  CHECK(fs::exists(dir.path / "metrics.json"));
  CHECK_FALSE(fs::exists(dir.path / "trajectory.svg"));
}

TEST_CASE("bench-assign: row count, gap and determinism") {
  TempDir a("bench_a"), b("bench_b");
  const std::vector<std::string> flags{"bench-assign", "--n-swarms-min", "2", "--n-swarms-max", "10", "--instances",
                                       "50",           "--seed",         "1", "--timing",        "off"};
  auto fa = flags, fb = flags;
  fa.insert(fa.end(), {"--out", a.path.string()});
  fb.insert(fb.end(), {"--out", b.path.string()});
  REQUIRE(run(fa).code == 0);
  REQUIRE(run(fb).code == 0);
  const auto csv = read_file(a.path / "bench_assign.csv");
  CHECK(count_lines(csv) == 1 + 9 * 50);
  CHECK(csv == read_file(b.path / "bench_assign.csv"));
  CHECK(read_file(a.path / "bench_assign.svg") == read_file(b.path / "bench_assign.svg"));

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const double gap = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(gap >= 0.0);
  }

  TempDir z("bench_zero");
  REQUIRE(run({"bench-assign", "--instances", "0", "--timing", "off", "--out", z.path.string()}).code == 0);
  CHECK(count_lines(read_file(z.path / "bench_assign.csv")) == 1);

  CHECK(run({"bench-assign", "--n-swarms-min", "5", "--n-swarms-max", "3", "--out", z.path.string()}).code == 2);
}

TEST_CASE("cluster command") {
  TempDir dir("cluster");
  write(dir.path / "three.csv", "id,r_x,r_y,v_x,v_y\na,0,0,0,0\nb,0.5,0,0,0\nc,1,0,0,0\nd,10,0,0,0\n");
  auto r = run({"cluster", (dir.path / "three.csv").string(), "--eps", "0.6"});
  CHECK(r.code == 0);
  CHECK(r.out == "id,cluster_id\na,0\nb,0\nc,0\nd,-1\n");

  REQUIRE(run({"cluster", (dir.path / "three.csv").string(), "--eps", "0.6", "--out", dir.path.string()}).code == 0);
  CHECK(read_file(dir.path / "clusters.csv") == r.out);

  write(dir.path / "empty.csv", "id,r_x,r_y,v_x,v_y\n");
  r = run({"cluster", (dir.path / "empty.csv").string(), "--eps", "1"});
  CHECK(r.code == 0);

  write(dir.path / "bad.csv", "id,r_x,r_y,v_x,v_y\na,0,0,0,0\nb,zero,0,0,0\n");
  r = run({"cluster", (dir.path / "bad.csv").string(), "--eps", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(run({"cluster", (dir.path / "three.csv").string(), "--eps", "-1"}).code == 2);
  CHECK(run({"cluster", (dir.path / "nope.csv").string(), "--eps", "1"}).code == 2);
}
