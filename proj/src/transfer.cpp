// SPDX-License-Identifier: Apache-2.0
#include "bilintang/transfer.hpp"

#include <numeric>

namespace bilintang {

namespace {

constexpr int kMaxTotalDerivativeOrder = 8;

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) {
    out *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

// n! / (a! b! c!) for a + b + c = n.
double trinomial(int n, int a, int b) {
  return binomial(n, a) * binomial(n - a, b);
}

Eigen::MatrixXcd evalScaledNDerivative(const StructuredBilinearSystem &sys,
                                       Complex s, const Eigen::VectorXcd &d,
                                       int order) {
  const Eigen::Index n = sys.n();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < sys.m(); ++i) {
    if (d(i) != Complex(0.0, 0.0)) {
      out += d(i) * sys.N(i).evalDerivative(s, order);
    }
  }
  return out;
}

void checkScalingLength(const StructuredBilinearSystem &sys,
                        const FrequencyTuple &freqs,
                        const ScalingSequence &scalings) {
  const Eigen::Index k = freqs.level();
  if (static_cast<Eigen::Index>(scalings.vectors.size()) != k - 1) {
    throw std::invalid_argument(
        "need k-1 scaling vectors, got " +
        std::to_string(scalings.vectors.size()) + " for k = " +
        std::to_string(k));
  }
  for (const Eigen::VectorXcd &d : scalings.vectors) {
    if (d.size() != sys.m()) {
      throw std::invalid_argument("scaling vector length must equal m");
    }
  }
}

void checkDerivativeOrders(const FrequencyTuple &freqs,
                           const std::vector<int> &orders) {
  if (static_cast<Eigen::Index>(orders.size()) != freqs.level()) {
    throw std::invalid_argument("need one derivative order per frequency");
  }
  int total = 0;
  for (int o : orders) {
    if (o < 0) {
      throw std::invalid_argument("derivative orders must be nonnegative");
    }
    total += o;
  }
  if (total > kMaxTotalDerivativeOrder) {
    throw std::invalid_argument("total derivative order exceeds cap of " +
                                std::to_string(kMaxTotalDerivativeOrder));
  }
}

} // namespace

const Eigen::PartialPivLU<Eigen::MatrixXcd> &
KSolver::factorization(Complex s) const {
  for (const auto &entry : cache_) {
    if (entry.first == s) {
      return entry.second;
    }
  }
  Eigen::MatrixXcd K = sys_.K().eval(s);
  cache_.emplace_back(s, Eigen::PartialPivLU<Eigen::MatrixXcd>(K));
  const auto &lu = cache_.back().second;
  if (!(lu.rcond() > 1e-15)) {
    throw SingularMatrixError(
        "K(s) is numerically singular at s = (" + std::to_string(s.real()) +
            ", " + std::to_string(s.imag()) + ")",
        s);
  }
  return lu;
}

Eigen::MatrixXcd KSolver::solve(Complex s, const Eigen::MatrixXcd &rhs) const {
  return factorization(s).solve(rhs);
}

Eigen::MatrixXcd KSolver::solveAdjoint(Complex s,
                                       const Eigen::MatrixXcd &rhs) const {
  return factorization(s).adjoint().solve(rhs);
}

Eigen::MatrixXcd KSolver::solveDerivative(Complex s, int order,
                                          const Eigen::MatrixXcd &rhs) const {
  // D^j(K^-1) = -K^-1 sum_{i=1}^{j} binom(j,i) K^(i) D^(j-i)(K^-1).
  std::vector<Eigen::MatrixXcd> chain;
  chain.push_back(solve(s, rhs));
  for (int j = 1; j <= order; ++j) {
    Eigen::MatrixXcd acc =
        Eigen::MatrixXcd::Zero(rhs.rows(), rhs.cols());
    for (int i = 1; i <= j; ++i) {
      Eigen::MatrixXcd Ki = sys_.K().evalDerivative(s, i);
      if (Ki.cwiseAbs().maxCoeff() == 0.0) {
        continue;
      }
      acc += binomial(j, i) * (Ki * chain[j - i]);
    }
    chain.push_back(-solve(s, acc));
  }
  return chain[order];
}

Eigen::MatrixXcd
KSolver::solveDerivativeAdjoint(Complex s, int order,
                                const Eigen::MatrixXcd &rhs) const {
  // (D^j(K^-1))^H X = conj(D^j((K^T)^-1) conj(X)); the transposed inverse
  // obeys the same recurrence with K^(i) transposed.
  const auto &lu = factorization(s);
  std::vector<Eigen::MatrixXcd> chain;
  chain.push_back(lu.transpose().solve(rhs.conjugate()));
  for (int j = 1; j <= order; ++j) {
    Eigen::MatrixXcd acc =
        Eigen::MatrixXcd::Zero(rhs.rows(), rhs.cols());
    for (int i = 1; i <= j; ++i) {
      Eigen::MatrixXcd Ki = sys_.K().evalDerivative(s, i);
      if (Ki.cwiseAbs().maxCoeff() == 0.0) {
        continue;
      }
      acc += binomial(j, i) * (Ki.transpose() * chain[j - i]);
    }
    Eigen::MatrixXcd solved = lu.transpose().solve(acc);
    chain.push_back(-solved);
  }
  return chain[order].conjugate();
}

Eigen::MatrixXcd evalRegular(const StructuredBilinearSystem &sys,
                             const FrequencyTuple &freqs) {
  const Eigen::Index k = freqs.level();
  if (k < 1) {
    throw std::invalid_argument("need at least one frequency point");
  }
  KSolver solver(sys);
  const Eigen::Index m = sys.m();

  // X_1 = K(s_1)^-1 B(s_1); X_{j+1} = K(s_{j+1})^-1 [N_1 X_j, ..., N_m X_j].
  Eigen::MatrixXcd X =
      solver.solve(freqs.points[0], sys.B().eval(freqs.points[0]));
  for (Eigen::Index j = 1; j < k; ++j) {
    const Eigen::Index w = X.cols();
    Eigen::MatrixXcd next(sys.n(), m * w);
    for (Eigen::Index i = 0; i < m; ++i) {
      next.middleCols(i * w, w) = sys.N(i).eval(freqs.points[j - 1]) * X;
    }
    X = solver.solve(freqs.points[j], next);
  }
  return sys.C().eval(freqs.points[k - 1]) * X;
}

Eigen::MatrixXcd evalScaledN(const StructuredBilinearSystem &sys, Complex s,
                             const Eigen::VectorXcd &d) {
  if (d.size() != sys.m()) {
    throw std::invalid_argument("scaling vector length must equal m");
  }
  return evalScaledNDerivative(sys, s, d, 0);
}

Eigen::MatrixXcd evalModified(const StructuredBilinearSystem &sys,
                              const FrequencyTuple &freqs,
                              const ScalingSequence &scalings) {
  const Eigen::Index k = freqs.level();
  checkScalingLength(sys, freqs, scalings);
  KSolver solver(sys);

  Eigen::MatrixXcd X =
      solver.solve(freqs.points[0], sys.B().eval(freqs.points[0]));
  for (Eigen::Index j = 1; j < k; ++j) {
    X = solver.solve(freqs.points[j],
                     evalScaledN(sys, freqs.points[j - 1],
                                 scalings.vectors[j - 1]) *
                         X);
  }
  return sys.C().eval(freqs.points[k - 1]) * X;
}

Eigen::MatrixXcd evalBlockwise(const StructuredBilinearSystem &sys,
                               const FrequencyTuple &freqs,
                               const Eigen::VectorXcd &b) {
  const Eigen::Index k = freqs.level();
  if (k < 1) {
    throw std::invalid_argument("need at least one frequency point");
  }
  if (b.size() != sys.m()) {
    throw std::invalid_argument("tangential direction length must equal m");
  }
  KSolver solver(sys);
  const Eigen::Index m = sys.m();

  Eigen::MatrixXcd X =
      solver.solve(freqs.points[0], sys.B().eval(freqs.points[0]) * b);
  for (Eigen::Index j = 1; j < k; ++j) {
    const Eigen::Index w = X.cols();
    Eigen::MatrixXcd next(sys.n(), m * w);
    for (Eigen::Index i = 0; i < m; ++i) {
      next.middleCols(i * w, w) = sys.N(i).eval(freqs.points[j - 1]) * X;
    }
    X = solver.solve(freqs.points[j], next);
  }
  return sys.C().eval(freqs.points[k - 1]) * X;
}

Eigen::MatrixXcd evalModifiedDerivative(const StructuredBilinearSystem &sys,
                                        const FrequencyTuple &freqs,
                                        const ScalingSequence &scalings,
                                        const std::vector<int> &orders) {
  const Eigen::Index k = freqs.level();
  checkScalingLength(sys, freqs, scalings);
  checkDerivativeOrders(freqs, orders);
  KSolver solver(sys);

  if (k == 1) {
    // All of C, K^-1, B share the single variable: trinomial Leibniz.
    const Complex s = freqs.points[0];
    const int o = orders[0];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.p(), sys.m());
    for (int a = 0; a <= o; ++a) {
      for (int bo = 0; a + bo <= o; ++bo) {
        const int c = o - a - bo;
        out += trinomial(o, a, bo) *
               (sys.C().evalDerivative(s, a) *
                solver.solveDerivative(s, bo, sys.B().evalDerivative(s, c)));
      }
    }
    return out;
  }

  // s_1 factor: scaledN(s_1) K(s_1)^-1 B(s_1).
  const Complex s1 = freqs.points[0];
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(sys.n(), sys.m());
  for (int a = 0; a <= orders[0]; ++a) {
    for (int bo = 0; a + bo <= orders[0]; ++bo) {
      const int c = orders[0] - a - bo;
      X += trinomial(orders[0], a, bo) *
           (evalScaledNDerivative(sys, s1, scalings.vectors[0], a) *
            solver.solveDerivative(s1, bo, sys.B().evalDerivative(s1, c)));
    }
  }

  // Middle factors s_t: scaledN(s_t) K(s_t)^-1, t = 2..k-1.
  for (Eigen::Index t = 1; t < k - 1; ++t) {
    const Complex st = freqs.points[t];
    const int o = orders[t];
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(sys.n(), X.cols());
    for (int a = 0; a <= o; ++a) {
      next += binomial(o, a) *
              (evalScaledNDerivative(sys, st, scalings.vectors[t], a) *
               solver.solveDerivative(st, o - a, X));
    }
    X = std::move(next);
  }

  // Left factor s_k: C(s_k) K(s_k)^-1.
  const Complex sk = freqs.points[k - 1];
  const int ok = orders[k - 1];
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.p(), X.cols());
  for (int a = 0; a <= ok; ++a) {
    out += binomial(ok, a) * (sys.C().evalDerivative(sk, a) *
                              solver.solveDerivative(sk, ok - a, X));
  }
  return out;
}

Eigen::MatrixXcd evalBlockwiseDerivative(const StructuredBilinearSystem &sys,
                                         const FrequencyTuple &freqs,
                                         const Eigen::VectorXcd &b,
                                         const std::vector<int> &orders) {
  const Eigen::Index k = freqs.level();
  if (b.size() != sys.m()) {
    throw std::invalid_argument("tangential direction length must equal m");
  }
  checkDerivativeOrders(freqs, orders);
  KSolver solver(sys);
  const Eigen::Index m = sys.m();

  if (k == 1) {
    const Complex s = freqs.points[0];
    const int o = orders[0];
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.p(), 1);
    for (int a = 0; a <= o; ++a) {
      for (int bo = 0; a + bo <= o; ++bo) {
        const int c = o - a - bo;
        out += trinomial(o, a, bo) *
               (sys.C().evalDerivative(s, a) *
                solver.solveDerivative(
                    s, bo, sys.B().evalDerivative(s, c) * b));
      }
    }
    return out;
  }

  // s_1 factor per block: N_i(s_1) K(s_1)^-1 B(s_1) b.
  const Complex s1 = freqs.points[0];
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(sys.n(), m);
  for (int a = 0; a <= orders[0]; ++a) {
    for (int bo = 0; a + bo <= orders[0]; ++bo) {
      const int c = orders[0] - a - bo;
      Eigen::MatrixXcd core = solver.solveDerivative(
          s1, bo, sys.B().evalDerivative(s1, c) * b);
      const double w = trinomial(orders[0], a, bo);
      for (Eigen::Index i = 0; i < m; ++i) {
        X.col(i) += w * (sys.N(i).evalDerivative(s1, a) * core);
      }
    }
  }

  // Middle factors: new bilinear index is slowest.
  for (Eigen::Index t = 1; t < k - 1; ++t) {
    const Complex st = freqs.points[t];
    const int o = orders[t];
    const Eigen::Index w = X.cols();
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(sys.n(), m * w);
    for (int a = 0; a <= o; ++a) {
      Eigen::MatrixXcd core = solver.solveDerivative(st, o - a, X);
      const double coeff = binomial(o, a);
      for (Eigen::Index i = 0; i < m; ++i) {
        next.middleCols(i * w, w) +=
            coeff * (sys.N(i).evalDerivative(st, a) * core);
      }
    }
    X = std::move(next);
  }

  const Complex sk = freqs.points[k - 1];
  const int ok = orders[k - 1];
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.p(), X.cols());
  for (int a = 0; a <= ok; ++a) {
    out += binomial(ok, a) * (sys.C().evalDerivative(sk, a) *
                              solver.solveDerivative(sk, ok - a, X));
  }
  return out;
}

Eigen::MatrixXcd
evalModifiedScalingGradient(const StructuredBilinearSystem &sys,
                            const FrequencyTuple &freqs,
                            const ScalingSequence &scalings, Eigen::Index j,
                            Eigen::Index i) {
  const Eigen::Index k = freqs.level();
  checkScalingLength(sys, freqs, scalings);
  if (j < 0 || j >= k - 1) {
    throw std::invalid_argument("scaling index out of range");
  }
  if (i < 0 || i >= sys.m()) {
    throw std::invalid_argument("scaling entry index out of range");
  }
  KSolver solver(sys);

  Eigen::MatrixXcd X =
      solver.solve(freqs.points[0], sys.B().eval(freqs.points[0]));
  for (Eigen::Index t = 1; t < k; ++t) {
    const Complex st = freqs.points[t - 1];
    Eigen::MatrixXcd factor =
        (t - 1 == j) ? sys.N(i).eval(st)
                     : evalScaledN(sys, st, scalings.vectors[t - 1]);
    X = solver.solve(freqs.points[t], factor * X);
  }
  return sys.C().eval(freqs.points[k - 1]) * X;
}

} // namespace bilintang
