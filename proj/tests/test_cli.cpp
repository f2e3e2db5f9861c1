// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line tool. argv[1] is the path to the
// built binary.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bilintang/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string &args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  std::array<char, 256> buf{};
  RunResult result;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) {
    result.out += buf.data();
  }
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("bilintang_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const char *name) const { return (path / name).string(); }
};

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("gen writes bundles and rejects bad families") {
  TempDir tmp;
  const RunResult gen =
      run("gen --family msd --n 100 --out " + tmp.sub("msd"));
  CHECK(gen.code == 0);
  CHECK(gen.out.find("n=100") != std::string::npos);
  int mtx = 0;
  for (const auto &entry : fs::directory_iterator(tmp.sub("msd"))) {
    if (entry.path().extension() == ".mtx") {
      ++mtx;
    }
  }
  CHECK(mtx == 10);

  const RunResult rod = run("gen --family delay_rod --n 100 --m 5 --p 2 --out " +
                            tmp.sub("rod"));
  CHECK(rod.code == 0);
  const auto sys = bilintang::loadSystem(tmp.sub("rod"));
  CHECK(sys.n() == 100);
  CHECK(sys.m() == 5);

  CHECK(run("gen --family warp --n 10 --out " + tmp.sub("x")).code == 2);
  CHECK(run("gen --family msd").code == 2); // missing --out
  CHECK(run("nonsense").code == 2);
}

TEST_CASE("reduce, verify, simulate, sweep, report pipeline") {
  TempDir tmp;
  REQUIRE(run("gen --family msd --n 120 --out " + tmp.sub("msd")).code == 0);

  const std::string reduceArgs =
      "reduce --model " + tmp.sub("msd") +
      " --framework SttInt --side one-sided-v --count 3 --seed 7 "
      "--trunc-tol 0 --out " +
      tmp.sub("red");
  const RunResult red = run(reduceArgs);
  CHECK(red.code == 0);
  CHECK(red.out.find("r=12") != std::string::npos);

  const RunResult verify = run("verify --model " + tmp.sub("msd") +
                               " --reduced " + tmp.sub("red") + " --json " +
                               tmp.sub("reports.json"));
  CHECK(verify.code == 0);
  CHECK(verify.out.find("fail=0") != std::string::npos);
  CHECK(fs::exists(tmp.sub("reports.json")));

  const RunResult sim =
      run("simulate --model " + tmp.sub("red") +
          " --signal msd_bench --tf 0.05 --dt 1e-4 --out " + tmp.sub("y.csv"));
  CHECK(sim.code == 0);
  std::ifstream csv(tmp.sub("y.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,y1,y2");

  const RunResult sweep =
      run("sweep --model " + tmp.sub("msd") + " --reduced " + tmp.sub("red") +
          " --a1 -2 --b1 2 --n1 20 --out " + tmp.sub("grid.csv"));
  CHECK(sweep.code == 0);
  CHECK(sweep.out.find("err_G1=") != std::string::npos);

  const RunResult report = run("report --reduced " + tmp.sub("red"));
  CHECK(report.code == 0);
  CHECK(report.out.find("SttInt") != std::string::npos);
  CHECK(report.out.find("one-sided-v") != std::string::npos);
}

TEST_CASE("dimension mismatches exit with code 4") {
  TempDir tmp;
  REQUIRE(run("gen --family msd --n 60 --out " + tmp.sub("msd")).code == 0);
  REQUIRE(run("gen --family delay_rod --n 50 --m 5 --p 2 --out " +
              tmp.sub("rod"))
              .code == 0);
  REQUIRE(run("reduce --model " + tmp.sub("msd") +
              " --side one-sided-v --count 2 --out " + tmp.sub("red"))
              .code == 0);
  CHECK(run("verify --model " + tmp.sub("rod") + " --reduced " +
            tmp.sub("red"))
            .code == 4);
}

TEST_CASE("singular interpolation point exits with code 3") {
  TempDir tmp;
  // K(i * 10^0) = i I - A is singular for A = [[0, 1], [-1, 0]].
  Eigen::MatrixXd A(2, 2);
  A << 0, 1, -1, 0;
  const Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  const auto sys = bilintang::makeFirstOrder(
      I2, A, {0.1 * I2, 0.2 * I2}, I2, I2);
  bilintang::saveSystem(tmp.sub("sing"), sys);
  const RunResult red =
      run("reduce --model " + tmp.sub("sing") +
          " --a 0 --b 0 --count 1 --side one-sided-v --out " + tmp.sub("red"));
  CHECK(red.code == 3);
}

TEST_CASE("config file values are applied and flags win") {
  TempDir tmp;
  REQUIRE(run("gen --family msd --n 60 --out " + tmp.sub("msd")).code == 0);
  {
    std::ofstream cfg(tmp.sub("run.cfg"));
    cfg << "[reduce]\n"
        << "model = \"" << tmp.sub("msd") << "\"\n"
        << "side = \"one-sided-v\"\n"
        << "count = 2\n"
        << "out = \"" << tmp.sub("redA") << "\"\n";
  }
  const RunResult a = run("--config " + tmp.sub("run.cfg") + " reduce");
  CHECK(a.code == 0);
  CHECK(a.out.find("r=8") != std::string::npos);

  const RunResult b = run("--config " + tmp.sub("run.cfg") +
                          " reduce --count 3 --out " + tmp.sub("redB"));
  CHECK(b.code == 0);
  CHECK(b.out.find("r=12") != std::string::npos);
}

TEST_CASE("pipelines are deterministic") {
  TempDir tmp;
  REQUIRE(run("gen --family msd --n 80 --out " + tmp.sub("msd")).code == 0);
  const std::string common = "reduce --model " + tmp.sub("msd") +
                             " --side one-sided-v --count 2 --seed 11 --out ";
  REQUIRE(run(common + tmp.sub("r1")).code == 0);
  REQUIRE(run(common + tmp.sub("r2")).code == 0);
  for (const auto &entry : fs::directory_iterator(tmp.sub("r1"))) {
    const std::string name = entry.path().filename().string();
    CHECK(slurp(entry.path().string()) ==
          slurp((fs::path(tmp.sub("r2")) / name).string()));
  }
}

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
