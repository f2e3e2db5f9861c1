// SPDX-License-Identifier: Apache-2.0
#include "bilintang/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace bilintang {

namespace {

Eigen::MatrixXd toReal(const Eigen::MatrixXcd &matrix, const char *name) {
  if (matrix.size() > 0) {
    const double imag_norm = matrix.imag().cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
    if (imag_norm > 1e-10 * scale) {
      throw std::invalid_argument(
          std::string("matrix ") + name +
          " has a non-negligible imaginary part; simulation requires a "
          "real-valued model (build bases with realification)");
    }
  }
  return matrix.real();
}

struct RealFirstOrder {
  Eigen::MatrixXd E, A, B, C;
  std::vector<Eigen::MatrixXd> N;
};

Trajectory runImex(const RealFirstOrder &model, const InputSignal &input,
                   double t_f, double dt, const Eigen::MatrixXd *Ad,
                   double tau) {
  if (dt <= 0.0 || t_f <= 0.0) {
    throw std::invalid_argument("t_f and dt must be positive");
  }
  const Eigen::Index n = model.A.rows();
  const Eigen::Index p = model.C.rows();
  const auto steps = static_cast<Eigen::Index>(std::llround(t_f / dt));

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(model.E - dt * model.A);
  if (lu.rcond() < 1e-14) {
    throw std::runtime_error(
        "E - dt*A is numerically singular; try a smaller dt");
  }

  // Delay lookback in whole steps (dt is snapped to divide tau upstream).
  const Eigen::Index lag =
      Ad ? static_cast<Eigen::Index>(std::llround(tau / dt)) : 0;

  Trajectory traj;
  traj.times.resize(static_cast<size_t>(steps) + 1);
  traj.outputs.resize(steps + 1, p);

  Eigen::MatrixXd history;
  if (Ad) {
    history.resize(n, steps + 1);
  }

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  traj.times[0] = 0.0;
  traj.outputs.row(0) = (model.C * x).transpose();
  if (Ad) {
    history.col(0) = x;
  }

  for (Eigen::Index q = 0; q < steps; ++q) {
    const double t_next = dt * static_cast<double>(q + 1);
    const Eigen::VectorXd u = input.u(t_next);
    if (u.size() != static_cast<Eigen::Index>(model.N.size())) {
      throw std::invalid_argument("input signal length does not match m");
    }
    Eigen::VectorXd rhs = model.E * x + dt * (model.B * u);
    for (size_t j = 0; j < model.N.size(); ++j) {
      if (u(static_cast<Eigen::Index>(j)) != 0.0) {
        rhs += dt * u(static_cast<Eigen::Index>(j)) * (model.N[j] * x);
      }
    }
    if (Ad) {
      // x(t_{q+1} - tau); zero history before t = 0.
      const Eigen::Index back = q + 1 - lag;
      if (back >= 0) {
        rhs += dt * (*Ad * history.col(back));
      }
    }
    x = lu.solve(rhs);
    traj.times[static_cast<size_t>(q) + 1] = t_next;
    traj.outputs.row(q + 1) = (model.C * x).transpose();
    if (Ad) {
      history.col(q + 1) = x;
    }
  }
  return traj;
}

} // namespace

InputSignal signalByName(const std::string &name, Eigen::Index m) {
  if (name == "zero") {
    return {[m](double) { return Eigen::VectorXd::Zero(m).eval(); }, "zero"};
  }
  if (name == "step") {
    return {[m](double) { return Eigen::VectorXd::Ones(m).eval(); },
            "unit step"};
  }
  if (name == "msd_bench") {
    if (m != 2) {
      throw std::invalid_argument("signal 'msd_bench' requires m = 2");
    }
    return {[](double t) {
              Eigen::VectorXd u(2);
              u << std::sin(200.0 * t) + 200.0, -std::cos(200.0 * t) - 200.0;
              return u;
            },
            "msd_bench"};
  }
  if (name == "rod_bench") {
    if (m != 5) {
      throw std::invalid_argument("signal 'rod_bench' requires m = 5");
    }
    return {[](double t) {
              Eigen::VectorXd u(5);
              u << 0.05 * (std::cos(10.0 * t) + std::cos(5.0 * t)),
                  0.05 * (std::sin(10.0 * t) + std::sin(5.0 * t)), 0.01, 0.01,
                  0.01;
              return u;
            },
            "rod_bench"};
  }
  throw std::invalid_argument("unknown input signal '" + name +
                              "' (valid: zero, step, msd_bench, rod_bench)");
}

Trajectory simulateFirstOrder(const StructuredBilinearSystem &sys,
                              const InputSignal &input, double t_f, double dt) {
  FirstOrderParts parts = extractFirstOrder(sys);
  RealFirstOrder model{toReal(parts.E, "E"), toReal(parts.A, "A"),
                       toReal(parts.B, "B"), toReal(parts.C, "C"), {}};
  for (size_t j = 0; j < parts.N.size(); ++j) {
    model.N.push_back(toReal(parts.N[j], "N"));
  }
  return runImex(model, input, t_f, dt, nullptr, 0.0);
}

Trajectory simulateSecondOrder(const StructuredBilinearSystem &sys,
                               const InputSignal &input, double t_f,
                               double dt) {
  SecondOrderParts parts = extractSecondOrder(sys);
  const Eigen::Index n = parts.M.rows();
  const Eigen::Index m = sys.m();
  const Eigen::Index p = sys.p();

  const Eigen::MatrixXd M = toReal(parts.M, "M");
  const Eigen::MatrixXd D = toReal(parts.D, "D");
  const Eigen::MatrixXd K = toReal(parts.K, "K");
  const Eigen::MatrixXd Bu = toReal(parts.Bu, "Bu");
  const Eigen::MatrixXd Cp = toReal(parts.Cp, "Cp");
  const Eigen::MatrixXd Cv = toReal(parts.Cv, "Cv");

  RealFirstOrder model;
  model.E = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  model.E.topLeftCorner(n, n).setIdentity();
  model.E.bottomRightCorner(n, n) = M;
  model.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  model.A.topRightCorner(n, n).setIdentity();
  model.A.bottomLeftCorner(n, n) = -K;
  model.A.bottomRightCorner(n, n) = -D;
  model.B = Eigen::MatrixXd::Zero(2 * n, m);
  model.B.bottomRows(n) = Bu;
  model.C = Eigen::MatrixXd::Zero(p, 2 * n);
  model.C.leftCols(n) = Cp;
  model.C.rightCols(n) = Cv;
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::MatrixXd Nc = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    Nc.bottomLeftCorner(n, n) = toReal(parts.Np[static_cast<size_t>(j)], "Np");
    Nc.bottomRightCorner(n, n) = toReal(parts.Nv[static_cast<size_t>(j)], "Nv");
    model.N.push_back(std::move(Nc));
  }
  return runImex(model, input, t_f, dt, nullptr, 0.0);
}

Trajectory simulateDelay(const StructuredBilinearSystem &sys,
                         const InputSignal &input, double t_f, double dt) {
  TimeDelayParts parts = extractTimeDelay(sys);
  RealFirstOrder model{toReal(parts.E, "E"), toReal(parts.A, "A"),
                       toReal(parts.B, "B"), toReal(parts.C, "C"), {}};
  for (size_t j = 0; j < parts.N.size(); ++j) {
    model.N.push_back(toReal(parts.N[j], "N"));
  }
  const Eigen::MatrixXd Ad = toReal(parts.Ad, "Ad");
  // Snap dt so the delay is a whole number of steps.
  const double steps_per_tau = std::max(1.0, std::ceil(parts.tau / dt));
  const double snapped = parts.tau / steps_per_tau;
  return runImex(model, input, t_f, snapped, &Ad, parts.tau);
}

Trajectory simulate(const StructuredBilinearSystem &sys,
                    const InputSignal &input, double t_f, double dt) {
  switch (sys.tag()) {
  case TemplateTag::FirstOrder:
    return simulateFirstOrder(sys, input, t_f, dt);
  case TemplateTag::SecondOrder:
    return simulateSecondOrder(sys, input, t_f, dt);
  case TemplateTag::TimeDelay:
    return simulateDelay(sys, input, t_f, dt);
  default:
    throw std::invalid_argument("cannot simulate a custom-template system");
  }
}

void writeTrajectoryCsv(const std::string &path, const Trajectory &traj) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << 't';
  for (Eigen::Index j = 0; j < traj.outputs.cols(); ++j) {
    out << ",y" << (j + 1);
  }
  out << '\n';
  char buf[40];
  for (Eigen::Index i = 0; i < traj.samples(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.times[static_cast<size_t>(i)]);
    out << buf;
    for (Eigen::Index j = 0; j < traj.outputs.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", traj.outputs(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

} // namespace bilintang
