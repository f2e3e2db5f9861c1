// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion. argv[1] is the path to
// the command-line binary (used by the determinism criterion).
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bilintang/bench.hpp"
#include "bilintang/recipes.hpp"
#include "bilintang/verify.hpp"
#include "oracles.hpp"

using namespace bilintang;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string &detail) {
  std::printf("criterion %d: %s  (%s)\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) {
    ++g_failures;
  }
}

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

ReducedModel reduceWith(const StructuredBilinearSystem &sys,
                        const RecipeOptions &options) {
  const InterpolationSpec spec = makeRecipeSpec(sys.m(), sys.p(), options);
  return project(sys, assembleBases(sys, spec));
}

// ---------------------------------------------------------------- criterion 1

struct Mode {
  std::string name;
  Framework framework;
  ProjectionSide side;
  int hermite = 0;
  bool identical = false;
};

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Mode> modes = {
      {"modified-V", Framework::Modified, ProjectionSide::OneSidedV},
      {"modified-W", Framework::Modified, ProjectionSide::OneSidedW},
      {"modified-2s", Framework::Modified, ProjectionSide::TwoSided},
      {"blockwise", Framework::BwtInt, ProjectionSide::TwoSided},
      {"matrix", Framework::MtxInt, ProjectionSide::TwoSided},
      {"hermite", Framework::Modified, ProjectionSide::TwoSided, 1},
      {"identical", Framework::Modified, ProjectionSide::TwoSided, 0, true},
  };
  const std::array<oracles::Kind, 3> kinds = {oracles::Kind::FirstOrder,
                                              oracles::Kind::SecondOrder,
                                              oracles::Kind::TimeDelay};
  long total = 0, ill = 0, failed = 0;
  std::string firstFailure;
  for (int sysIdx = 0; sysIdx < 20; ++sysIdx) {
    const oracles::Kind kind = kinds[sysIdx % 3];
    const Eigen::Index n = 12 + 2 * sysIdx; // 12..50
    const Eigen::Index m = 1 + sysIdx % 3;
    const Eigen::Index p = 1 + sysIdx % 2;
    const StructuredBilinearSystem sys =
        oracles::randomSystem(1000 + sysIdx, kind, n, m, p);
    // Two-sided matrix interpolation pairs bases of widths sum(m^j) and
    // p*sum(m^(j-1)); the theorem's span hypothesis survives the equal-rank
    // pairing only when p = m, so check that mode on square-width systems.
    const Eigen::Index msq = 1 + sysIdx % 2;
    const StructuredBilinearSystem sysSquare =
        oracles::randomSystem(2000 + sysIdx, kind, n, msq, msq);
    for (const Mode &mode : modes) {
      const bool square = mode.framework == Framework::MtxInt &&
                          mode.side == ProjectionSide::TwoSided;
      const Eigen::Index mm = square ? msq : m;
      const Eigen::Index pp = square ? msq : p;
      const StructuredBilinearSystem &subject = square ? sysSquare : sys;
      RecipeOptions options;
      options.framework = mode.framework;
      options.side = mode.side;
      options.a = -1.0;
      options.b = 1.0;
      options.count = 2;
      options.level = 2;
      options.hermite_order = mode.hermite;
      options.identical_points = mode.identical;
      options.realify = false;
      options.seed = 77 + sysIdx;
      const InterpolationSpec spec = makeRecipeSpec(mm, pp, options);
      const ReducedModel rom = project(subject, assembleBases(subject, spec));
      const auto reports = checkConditions(subject, rom, spec, 1e-8);
      for (const auto &rep : reports) {
        ++total;
        if (rep.ill_conditioned) {
          ++ill;
        } else if (!rep.pass) {
          ++failed;
          if (firstFailure.empty()) {
            std::ostringstream os;
            os << "sys " << sysIdx << " " << mode.name << " " << rep.id
               << " rel=" << rep.rel_residual;
            firstFailure = os.str();
          }
        }
      }
    }
  }
  const double elapsed = seconds(start);
  const bool illOk = ill * 20 < total; // < 5%
  const bool pass = failed == 0 && illOk && elapsed < 120.0;
  std::ostringstream detail;
  detail << total << " conditions, " << failed << " failed, " << ill
         << " ill-conditioned, " << elapsed << " s";
  if (!firstFailure.empty()) {
    detail << "; first failure: " << firstFailure;
  }
  report(1, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 2

void criterion2() {
  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;
  for (int k = 2; k <= 3; ++k) {
    for (Eigen::Index m = 2; m <= 3; ++m) {
      const StructuredBilinearSystem sys = oracles::randomSystem(
          2000 + 10 * k + m, oracles::Kind::FirstOrder, 6, m, 2);
      oracles::Rng rng(2100 + 10 * k + m);
      std::vector<Complex> s;
      for (int j = 0; j < k; ++j) {
        s.push_back({0.1 * rng.vector(1)(0), 1.0 + rng.vector(1)(0)});
      }
      const Eigen::MatrixXcd G = evalRegular(sys, {s});
      // Every block of G_k is recovered by a unit-scaling chain.
      const Eigen::Index blocks = G.cols() / m;
      for (Eigen::Index blk = 0; blk < blocks; ++blk) {
        ScalingSequence d;
        Eigen::Index rest = blk;
        for (int j = 0; j + 1 < k; ++j) {
          Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
          e(rest % m) = 1.0;
          rest /= m;
          d.vectors.push_back(e);
        }
        const Eigen::MatrixXcd block = evalModified(sys, {s}, d);
        const double rel = (block - G.middleCols(blk * m, m)).norm() /
                           std::max(G.norm(), 1e-300);
        worst = std::max(worst, rel);
      }
    }
  }
  pass = worst <= 1e-12;
  detail << "max block-recovery residual " << worst;
  report(2, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 3

void criterion3() {
  double worst = 0.0;
  for (int seed = 0; seed < 6; ++seed) {
    const oracles::Kind kind = static_cast<oracles::Kind>(seed % 3);
    const StructuredBilinearSystem sys =
        oracles::randomSystem(3000 + seed, kind, 4 + seed % 5, 2, 2);
    oracles::Rng rng(3100 + seed);
    for (int k = 1; k <= 3; ++k) {
      std::vector<Complex> s;
      for (int j = 0; j < k; ++j) {
        s.push_back({0.1 * rng.vector(1)(0), 1.0 + rng.vector(1)(0)});
      }
      const Eigen::MatrixXcd got = evalRegular(sys, {s});
      const Eigen::MatrixXcd want = oracles::kroneckerRegular(sys, s);
      worst = std::max(worst,
                       (got - want).norm() / std::max(want.norm(), 1e-300));
    }
  }
  report(3, worst <= 1e-12,
         "max recursive-vs-Kronecker residual " + std::to_string(worst));
}

// ---------------------------------------------------------------- criterion 4

void criterion4() {
  double worst = 0.0;
  int cases = 0;
  std::string worstCase;
  for (int seed = 0; seed < 50; ++seed) {
    const oracles::Kind kind = static_cast<oracles::Kind>(seed % 3);
    const Eigen::Index m = 1 + seed % 2;
    const StructuredBilinearSystem sys =
        oracles::randomSystem(4000 + seed, kind, 4, m, 2);
    oracles::Rng rng(4100 + seed);
    const int k = 2 + seed % 2;
    FrequencyTuple freqs;
    ScalingSequence d;
    for (int j = 0; j < k; ++j) {
      freqs.points.push_back({0.1 * rng.vector(1)(0), 1.0 + rng.vector(1)(0)});
    }
    for (int j = 0; j + 1 < k; ++j) {
      d.vectors.push_back(rng.complexVector(m));
    }
    const double h = 1e-5;
    const int which = seed % 3;
    Eigen::MatrixXcd got, fd;
    std::string label;
    if (which == 0) {
      // Frequency partial of the modified transfer function.
      const int var = seed % k;
      std::vector<int> orders(k, 0);
      orders[var] = 1;
      got = evalModifiedDerivative(sys, freqs, d, orders);
      fd = oracles::centralDifference(
          [&](Complex at) {
            FrequencyTuple moved = freqs;
            moved.points[var] = at;
            return evalModified(sys, moved, d);
          },
          freqs.points[var], h);
      label = "modified/ds";
    } else if (which == 1) {
      // Frequency partial of the blockwise evaluation.
      const Eigen::VectorXcd b = rng.complexVector(m);
      const int var = seed % k;
      std::vector<int> orders(k, 0);
      orders[var] = 1;
      got = evalBlockwiseDerivative(sys, freqs, b, orders);
      fd = oracles::centralDifference(
          [&](Complex at) {
            FrequencyTuple moved = freqs;
            moved.points[var] = at;
            return evalBlockwise(sys, moved, b);
          },
          freqs.points[var], h);
      label = "blockwise/ds";
    } else {
      // Scaling-vector partial.
      const Eigen::Index j = seed % (k - 1);
      const Eigen::Index i = seed % m;
      got = evalModifiedScalingGradient(sys, freqs, d, j, i);
      ScalingSequence dp = d, dm = d;
      dp.vectors[j](i) += 1e-6;
      dm.vectors[j](i) -= 1e-6;
      fd = (evalModified(sys, freqs, dp) - evalModified(sys, freqs, dm)) /
           2e-6;
      label = "modified/dd";
    }
    const double rel = (got - fd).norm() / std::max(fd.norm(), 1.0);
    if (rel > worst) {
      worst = rel;
      worstCase = label;
    }
    ++cases;
  }
  report(4, worst <= 1e-6 && cases == 50,
         "50 cases, max FD residual " + std::to_string(worst) + " (" +
             worstCase + ")");
}

// ---------------------------------------------------------------- criterion 5

void criterion5() {
  bool pass = true;
  std::ostringstream detail;
  for (int ns = 1; ns <= 3 && pass; ++ns) {
    for (int k = 1; k <= 3 && pass; ++k) {
      for (Eigen::Index m = 1; m <= 3 && pass; ++m) {
        for (Eigen::Index p = 1; p <= 2 && pass; ++p) {
          Eigen::Index sumPow = 0, sumPowNext = 0, power = 1;
          for (int j = 1; j <= k; ++j) {
            sumPow += power; // m^0 + ... + m^{k-1}
            power *= m;
            sumPowNext += power; // m^1 + ... + m^k
          }
          const Eigen::Index mtxV = ns * sumPowNext;
          const Eigen::Index mtxW = ns * p * sumPow;
          const Eigen::Index bwt = ns * sumPow;
          const Eigen::Index tang = ns * k;
          if (ns * rawWidthPerSetV(Framework::MtxInt, k, m) != mtxV ||
              ns * rawWidthPerSetW(Framework::MtxInt, k, m, p) != mtxW ||
              ns * rawWidthPerSetV(Framework::BwtInt, k, m) != bwt ||
              ns * rawWidthPerSetW(Framework::BwtInt, k, m, p) != bwt ||
              ns * rawWidthPerSetV(Framework::SttInt, k, m) != tang ||
              ns * rawWidthPerSetW(Framework::Modified, k, m, p) != tang) {
            pass = false;
            detail << "formula mismatch at ns=" << ns << " k=" << k
                   << " m=" << m << " p=" << p;
          }
          if (!pass) {
            break;
          }
          // Cross-check against an actual assembly.
          const StructuredBilinearSystem sys = oracles::randomSystem(
              5000 + 100 * ns + 10 * k + m, oracles::Kind::FirstOrder, 12, m,
              p);
          for (Framework fw :
               {Framework::Modified, Framework::BwtInt, Framework::MtxInt}) {
            RecipeOptions options;
            options.framework = fw;
            options.side = ProjectionSide::TwoSided;
            options.a = -1.0;
            options.b = 1.0;
            options.count = ns;
            options.level = k;
            options.realify = false;
            options.seed = 9;
            const InterpolationSpec spec = makeRecipeSpec(m, p, options);
            const ReductionBases bases = assembleBases(sys, spec);
            const Eigen::Index wantV =
                fw == Framework::MtxInt ? mtxV
                : fw == Framework::BwtInt ? bwt
                                          : tang;
            const Eigen::Index wantW =
                fw == Framework::MtxInt ? mtxW
                : fw == Framework::BwtInt ? bwt
                                          : tang;
            if (bases.raw_width_V != wantV || bases.raw_width_W != wantW) {
              pass = false;
              detail << "assembled widths mismatch at ns=" << ns << " k=" << k
                     << " m=" << m << " p=" << p << " fw="
                     << frameworkName(fw) << ": V " << bases.raw_width_V
                     << "/" << wantV << " W " << bases.raw_width_W << "/"
                     << wantW;
              break;
            }
          }
        }
      }
    }
  }
  if (pass) {
    detail << "all widths match for ns,k in {1,2,3}, m in {1,2,3}, p in {1,2}";
  }
  report(5, pass, detail.str());
}

// ------------------------------------------------------- criteria 6 and 7

// The benchmark constructions fix the reduced size a priori (rank truncation
// is a deliberate compression step reserved for the rank-deficient matrix
// recipe on the rod), so the benchmark recipes disable the truncation.
RecipeOptions msdRecipe(Framework fw, int count, std::uint64_t seed) {
  RecipeOptions options;
  options.framework = fw;
  options.side = ProjectionSide::OneSidedV;
  options.a = -4.0;
  options.b = 4.0;
  options.count = count;
  options.level = 2;
  options.truncation_tol = 0.0;
  options.seed = seed;
  return options;
}

RecipeOptions rodRecipe(Framework fw, ProjectionSide side, double a, double b,
                        int count, std::uint64_t seed) {
  RecipeOptions options;
  options.framework = fw;
  options.side = side;
  options.a = a;
  options.b = b;
  options.count = count;
  options.level = 2;
  options.truncation_tol = fw == Framework::MtxInt ? 1e-10 : 0.0;
  options.seed = seed;
  return options;
}

void criteria6and7() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream d6, d7;
  bool pass6 = true, pass7 = true;

  // Damped mass-spring chain, n = 1000, r = 24 for every framework.
  const StructuredBilinearSystem msd = makeMsd(1000);
  const std::vector<std::pair<Framework, int>> msdRuns = {
      {Framework::SttInt, 6},
      {Framework::SftInt, 6},
      {Framework::BwtInt, 4},
      {Framework::MtxInt, 2},
  };
  const InputSignal msdInput = signalByName("msd_bench", 2);
  const Trajectory msdFull = simulate(msd, msdInput, 1.0, 1e-3);
  // G1 is compared on the decades around the 200 rad/s excitation of the
  // time-domain experiment. The substitute chain matrices place a resonant
  // cluster in [2e-2, 4] that the fixed 24-dimensional recipes do not sample;
  // table-level matching there is explicitly out of scope.
  const auto msdSweep = sweepG1(msd, 1.0, 4.0, 100);
  for (const auto &[fw, count] : msdRuns) {
    const ReducedModel rom = reduceWith(msd, msdRecipe(fw, count, 31));
    if (rom.r() != 24) {
      pass6 = false;
      d6 << " msd/" << frameworkName(fw) << " r=" << rom.r() << "!=24;";
    }
    const Trajectory red = simulate(rom.system, msdInput, 1.0, 1e-3);
    const double esim = errSim(msdFull, red);
    const double eg1 =
        maxRelSpectralError(msdSweep, sweepG1(rom.system, 1.0, 4.0, 100));
    if (esim > 1e-1 || eg1 > 1e-2) {
      pass7 = false;
    }
    d7 << " msd/" << frameworkName(fw) << " err_sim=" << esim
       << " err_G1=" << eg1 << ";";
  }

  // Time-delayed heated rod, n = 1000, m = 5, p = 2.
  const StructuredBilinearSystem rod = makeDelayRod(1000, 5, 2, 1.0);
  const auto rodSweep = sweepG1(rod, -4.0, 4.0, 100);

  const ReducedModel rodStt = reduceWith(
      rod, rodRecipe(Framework::SttInt, ProjectionSide::TwoSided, -4.0, 4.0,
                     9, 33));
  const ReducedModel rodSft = reduceWith(
      rod, rodRecipe(Framework::SftInt, ProjectionSide::TwoSided, -4.0, 4.0,
                     9, 34));
  const ReducedModel rodBwt = reduceWith(
      rod, rodRecipe(Framework::BwtInt, ProjectionSide::TwoSided, -4.0, 4.0,
                     3, 35));
  const ReducedModel rodMtx = reduceWith(
      rod,
      rodRecipe(Framework::MtxInt, ProjectionSide::OneSidedV, 0.0, 0.0, 1,
                36));
  if (rodStt.r() != 36 || rodSft.r() != 36 || rodBwt.r() != 36) {
    pass6 = false;
    d6 << " rod tangential/blockwise orders " << rodStt.r() << ","
       << rodSft.r() << "," << rodBwt.r() << " != 36;";
  }
  // The matrix-interpolation columns are rank deficient by construction;
  // the order lands wherever the rank truncation puts it, bounded by the
  // realified raw width.
  if (rodMtx.bases.raw_width_V != 30 || rodMtx.r() < 1 || rodMtx.r() > 60) {
    pass6 = false;
    d6 << " rod/MtxInt raw=" << rodMtx.bases.raw_width_V
       << " r=" << rodMtx.r() << ";";
  }
  d6 << " rod orders stt=" << rodStt.r() << " sft=" << rodSft.r()
     << " bwt=" << rodBwt.r() << " mtx=" << rodMtx.r();

  for (const auto &[name, rom] :
       std::vector<std::pair<std::string, const ReducedModel *>>{
           {"SftInt", &rodSft}, {"MtxInt", &rodMtx}}) {
    const double eg1 = maxRelSpectralError(
        rodSweep, sweepG1(rom->system, -4.0, 4.0, 100));
    if (eg1 > 1e-1) {
      pass7 = false;
    }
    d7 << " rod/" << name << " err_G1=" << eg1 << ";";
  }

  const double elapsed = seconds(start);
  if (elapsed >= 600.0) {
    pass7 = false;
  }
  report(6, pass6, "msd r=24 x4;" + d6.str());
  report(7, pass7, d7.str() + " elapsed " + std::to_string(elapsed) + " s");
}

// ---------------------------------------------------------------- criterion 8

void criterion8() {
  // x' = -x + x u + u with u = 0.5: x(t) = 1 - exp(-t/2), steady state 1.
  const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(1, 1);
  const StructuredBilinearSystem sys =
      makeFirstOrder(one, -one, {one}, one, one);
  const InputSignal half{
      [](double) { return Eigen::VectorXd::Constant(1, 0.5); }, "const 0.5"};
  const double t_f = 2.0;
  const double exact = 1.0 - std::exp(-0.5 * t_f);
  auto errAt = [&](double dt) {
    const Trajectory traj = simulateFirstOrder(sys, half, t_f, dt);
    return std::abs(traj.outputs(traj.samples() - 1, 0) - exact);
  };
  std::vector<double> orders;
  double dt = 1e-2;
  for (int i = 0; i < 4; ++i) {
    orders.push_back(std::log2(errAt(dt) / errAt(dt / 2.0)));
    dt /= 2.0;
  }
  bool pass = true;
  std::ostringstream detail;
  detail << "empirical orders:";
  for (double o : orders) {
    detail << " " << o;
    if (o < 0.7 || o > 1.3) {
      pass = false;
    }
  }
  report(8, pass, detail.str());
}

// ---------------------------------------------------------------- criterion 9

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void criterion9(const std::string &cli) {
  const fs::path root =
      fs::temp_directory_path() / "bilintang_acceptance_determinism";
  fs::remove_all(root);
  bool pass = true;
  std::ostringstream detail;
  for (int runIdx = 0; runIdx < 2; ++runIdx) {
    const fs::path dir = root / ("run" + std::to_string(runIdx));
    fs::create_directories(dir);
    std::ostringstream cmd;
    cmd << cli << " gen --family msd --n 120 --out " << (dir / "msd").string()
        << " > /dev/null 2>&1 && " << cli << " reduce --model "
        << (dir / "msd").string()
        << " --framework SttInt --side one-sided-v --count 3 --seed 13 --out "
        << (dir / "red").string() << " > /dev/null 2>&1 && " << cli
        << " verify --model " << (dir / "msd").string() << " --reduced "
        << (dir / "red").string() << " --json "
        << (dir / "reports.json").string() << " > /dev/null 2>&1 && " << cli
        << " simulate --model " << (dir / "red").string()
        << " --signal msd_bench --tf 0.05 --dt 1e-4 --out "
        << (dir / "y.csv").string() << " > /dev/null 2>&1 && " << cli
        << " sweep --model " << (dir / "msd").string() << " --reduced "
        << (dir / "red").string() << " --a1 -2 --b1 2 --n1 20 --out "
        << (dir / "grid.csv").string() << " > /dev/null 2>&1";
    if (std::system(cmd.str().c_str()) != 0) {
      pass = false;
      detail << "pipeline run " << runIdx << " failed; ";
    }
  }
  int compared = 0;
  if (pass) {
    for (const auto &entry :
         fs::recursive_directory_iterator(root / "run0")) {
      if (!entry.is_regular_file()) {
        continue;
      }
      const fs::path rel = fs::relative(entry.path(), root / "run0");
      if (slurp(entry.path()) != slurp(root / "run1" / rel)) {
        pass = false;
        detail << "mismatch in " << rel.string() << "; ";
      }
      ++compared;
    }
    if (compared == 0) {
      pass = false;
      detail << "no artifacts produced; ";
    }
  }
  detail << compared << " artifacts byte-compared";
  fs::remove_all(root);
  report(9, pass, detail.str());
}

} // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
    return 1;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criteria6and7();
  criterion8();
  criterion9(argv[1]);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
