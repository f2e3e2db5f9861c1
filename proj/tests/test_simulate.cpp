// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "bilintang/bench.hpp"
#include "bilintang/simulate.hpp"
#include "oracles.hpp"

using namespace bilintang;

namespace {

StructuredBilinearSystem scalarFirstOrder(double a, double nval) {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  return makeFirstOrder(one, a * one, {nval * one}, one, one);
}

} // namespace

TEST_CASE("named signals") {
  const InputSignal msd = signalByName("msd_bench", 2);
  const Eigen::VectorXd u = msd.u(0.1);
  CHECK(u(0) == doctest::Approx(std::sin(20.0) + 200.0));
  CHECK(u(1) == doctest::Approx(-std::cos(20.0) - 200.0));

  const InputSignal rod = signalByName("rod_bench", 5);
  const Eigen::VectorXd v = rod.u(0.2);
  CHECK(v(0) == doctest::Approx(0.05 * (std::cos(2.0) + std::cos(1.0))));
  CHECK(v(1) == doctest::Approx(0.05 * (std::sin(2.0) + std::sin(1.0))));
  CHECK(v(2) == doctest::Approx(0.01));
  CHECK(v(4) == doctest::Approx(0.01));

  CHECK(signalByName("zero", 3).u(1.0).norm() == 0.0);
  CHECK(signalByName("step", 3).u(1.0).isOnes());
  CHECK_THROWS_AS(signalByName("unknown", 2), std::invalid_argument);
  CHECK_THROWS_AS(signalByName("msd_bench", 3), std::invalid_argument);
}

TEST_CASE("zero input gives zero output") {
  const StructuredBilinearSystem sys =
      oracles::randomSystem(301, oracles::Kind::FirstOrder, 5, 2, 2);
  const Trajectory traj = simulate(sys, signalByName("zero", 2), 1.0, 1e-2);
  CHECK(traj.outputs.norm() == 0.0);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(1.0));
}

TEST_CASE("linear scalar step response approaches 1 - e^{-t}") {
  const StructuredBilinearSystem sys = scalarFirstOrder(-1.0, 0.0);
  const Trajectory traj =
      simulateFirstOrder(sys, signalByName("step", 1), 5.0, 1e-3);
  // Monotone increasing toward 1.
  for (Eigen::Index q = 1; q < traj.samples(); ++q) {
    CHECK(traj.outputs(q, 0) >= traj.outputs(q - 1, 0));
  }
  CHECK(traj.outputs(traj.samples() - 1, 0) ==
        doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-2));
  // dt = 1e-3 resolves the analytic solution to about 1e-3.
  const double t = traj.times[1000];
  CHECK(std::abs(traj.outputs(1000, 0) - (1.0 - std::exp(-t))) < 5e-3);
}

TEST_CASE("bilinear scalar steady state") {
  // x' = -x + 0.5 x + 0.5: steady state 1.
  const StructuredBilinearSystem sys = scalarFirstOrder(-1.0, 1.0);
  InputSignal half{[](double) { return Eigen::VectorXd::Constant(1, 0.5); },
                   "const 0.5"};
  const Trajectory traj = simulateFirstOrder(sys, half, 20.0, 1e-3);
  CHECK(traj.outputs(traj.samples() - 1, 0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("first-order IMEX self-convergence") {
  const StructuredBilinearSystem sys = scalarFirstOrder(-1.0, 1.0);
  InputSignal smooth{
      [](double t) { return Eigen::VectorXd::Constant(1, 0.4 + 0.2 * std::sin(t)); },
      "smooth"};
  const double t_f = 2.0;
  auto lastOutput = [&](double dt) {
    const Trajectory traj = simulateFirstOrder(sys, smooth, t_f, dt);
    return traj.outputs(traj.samples() - 1, 0);
  };
  const double ref = lastOutput(1e-3 / 16.0);
  const double e1 = std::abs(lastOutput(1e-3) - ref);
  const double e2 = std::abs(lastOutput(5e-4) - ref);
  const double ratio = e1 / e2;
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}

TEST_CASE("second-order companion embedding") {
  // q'' + q' + q = u with Cp = I: smoke + linear consistency against the
  // first-order companion form integrated directly.
  const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
  const StructuredBilinearSystem so =
      makeSecondOrder(one, one, one, {zero}, {zero}, one, one, zero);
  Eigen::MatrixXd E2 = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd A2(2, 2);
  A2 << 0, 1, -1, -1;
  Eigen::MatrixXd B2(2, 1);
  B2 << 0, 1;
  Eigen::MatrixXd C2(1, 2);
  C2 << 1, 0;
  const StructuredBilinearSystem fo =
      makeFirstOrder(E2, A2, {Eigen::MatrixXd::Zero(2, 2)}, B2, C2);
  const Trajectory a = simulate(so, signalByName("step", 1), 2.0, 1e-3);
  const Trajectory b = simulate(fo, signalByName("step", 1), 2.0, 1e-3);
  REQUIRE(a.samples() == b.samples());
  CHECK((a.outputs - b.outputs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("delay simulation") {
  SUBCASE("zero history: delay inactive until tau") {
    // x' = -x + Ad x(t - 1) + u; with x = 0 on [-1, 0] the delayed term
    // contributes nothing on [0, 1], matching the undelayed system there.
    const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
    const StructuredBilinearSystem delayed =
        makeTimeDelay(-one, 0.8 * one, {Eigen::MatrixXd::Zero(1, 1)}, one, one,
                      1.0);
    const StructuredBilinearSystem undelayed =
        makeFirstOrder(one, -one, {Eigen::MatrixXd::Zero(1, 1)}, one, one);
    const double dt = 1e-3;
    const Trajectory a = simulate(delayed, signalByName("step", 1), 1.0, dt);
    const Trajectory b = simulate(undelayed, signalByName("step", 1), 1.0, dt);
    REQUIRE(a.samples() == b.samples());
    for (Eigen::Index q = 0; q < a.samples(); ++q) {
      if (a.times[q] <= 1.0 - dt) {
        CHECK(std::abs(a.outputs(q, 0) - b.outputs(q, 0)) < 1e-9);
      }
    }
  }

  SUBCASE("dt snaps to divide tau") {
    const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
    const StructuredBilinearSystem delayed =
        makeTimeDelay(-one, 0.5 * one, {Eigen::MatrixXd::Zero(1, 1)}, one, one,
                      0.7);
    const Trajectory traj =
        simulate(delayed, signalByName("step", 1), 2.0, 3e-3);
    const double dt = traj.times[1] - traj.times[0];
    const double ratio = 0.7 / dt;
    CHECK(std::abs(ratio - std::round(ratio)) < 1e-9);
  }
}

TEST_CASE("trajectory CSV format") {
  namespace fs = std::filesystem;
  const StructuredBilinearSystem sys =
      oracles::randomSystem(307, oracles::Kind::FirstOrder, 4, 2, 2);
  const Trajectory traj = simulate(sys, signalByName("step", 2), 0.1, 1e-2);
  const fs::path path =
      fs::temp_directory_path() / "bilintang_test_traj.csv";
  writeTrajectoryCsv(path.string(), traj);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,y1,y2");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
  }
  CHECK(rows == traj.samples());
  fs::remove(path);
}
