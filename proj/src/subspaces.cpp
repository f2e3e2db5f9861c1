// SPDX-License-Identifier: Apache-2.0
#include "bilintang/subspaces.hpp"

#include <algorithm>

namespace bilintang {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) {
    out *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

double trinomial(int n, int a, int b) {
  return binomial(n, a) * binomial(n - a, b);
}

Eigen::MatrixXcd scaledNDerivative(const StructuredBilinearSystem &sys,
                                   Complex s, const Eigen::VectorXcd &d,
                                   int order) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(sys.n(), sys.n());
  for (Eigen::Index i = 0; i < sys.m(); ++i) {
    if (d(i) != Complex(0.0, 0.0)) {
      out += d(i) * sys.N(i).evalDerivative(s, order);
    }
  }
  return out;
}

// d^order/ds^order (K^-1 B)(s) * seed.
Eigen::MatrixXcd kinvBDerivative(const KSolver &solver,
                                 const StructuredBilinearSystem &sys,
                                 Complex s, int order,
                                 const Eigen::MatrixXcd &seed) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(sys.n(), seed.cols());
  for (int bo = 0; bo <= order; ++bo) {
    const int c = order - bo;
    out += binomial(order, bo) *
           solver.solveDerivative(s, bo, sys.B().evalDerivative(s, c) * seed);
  }
  return out;
}

// [d^order/ds^order (C K^-1)(s)]^H * seed.
Eigen::MatrixXcd ckinvAdjointDerivative(const KSolver &solver,
                                        const StructuredBilinearSystem &sys,
                                        Complex s, int order,
                                        const Eigen::MatrixXcd &seed) {
  Eigen::MatrixXcd out =
      Eigen::MatrixXcd::Zero(sys.n(), seed.cols());
  for (int a = 0; a <= order; ++a) {
    out += binomial(order, a) *
           solver.solveDerivativeAdjoint(
               s, order - a, sys.C().evalDerivative(s, a).adjoint() * seed);
  }
  return out;
}

std::vector<int> zeroOrders(size_t count) { return std::vector<int>(count, 0); }

} // namespace

std::string frameworkName(Framework fw) {
  switch (fw) {
  case Framework::Modified:
    return "modified";
  case Framework::SftInt:
    return "SftInt";
  case Framework::SttInt:
    return "SttInt";
  case Framework::BwtInt:
    return "BwtInt";
  default:
    return "MtxInt";
  }
}

Framework frameworkFromName(const std::string &name) {
  if (name == "modified") {
    return Framework::Modified;
  }
  if (name == "SftInt" || name == "sft") {
    return Framework::SftInt;
  }
  if (name == "SttInt" || name == "stt") {
    return Framework::SttInt;
  }
  if (name == "BwtInt" || name == "bwt") {
    return Framework::BwtInt;
  }
  if (name == "MtxInt" || name == "mtx") {
    return Framework::MtxInt;
  }
  throw std::invalid_argument(
      "unknown framework '" + name +
      "' (valid: modified, SftInt, SttInt, BwtInt, MtxInt)");
}

bool PointSet::hermite() const {
  auto nonzero = [](int o) { return o != 0; };
  return std::any_of(ell.begin(), ell.end(), nonzero) ||
         std::any_of(nu.begin(), nu.end(), nonzero);
}

std::vector<Eigen::VectorXcd>
InterpolationSpec::scalingsFor(const PointSet &set, bool use_delta) const {
  const Eigen::Index count = use_delta ? set.kappa() - 1 : set.k() - 1;
  const Eigen::Index m = set.b.size();
  switch (framework) {
  case Framework::SftInt:
    return std::vector<Eigen::VectorXcd>(
        count, Eigen::VectorXcd::Ones(m));
  case Framework::SttInt:
    return std::vector<Eigen::VectorXcd>(count, set.b);
  default:
    return use_delta ? set.delta : set.d;
  }
}

void InterpolationSpec::validate(Eigen::Index m, Eigen::Index p) const {
  if (sets.empty()) {
    throw std::invalid_argument("interpolation spec has no point sets");
  }
  const bool needs_W = side != ProjectionSide::OneSidedV;
  const bool needs_V = side != ProjectionSide::OneSidedW;
  for (const PointSet &set : sets) {
    if (needs_V && set.k() < 1) {
      throw std::invalid_argument("point set needs at least one right point");
    }
    if (needs_W && set.kappa() < 1) {
      throw std::invalid_argument("point set needs at least one left point");
    }
    if (framework != Framework::MtxInt) {
      if (needs_V && (set.b.size() != m || set.b.norm() == 0.0)) {
        throw std::invalid_argument("right direction must be nonzero length m");
      }
      if (needs_W && (set.c.size() != p || set.c.norm() == 0.0)) {
        throw std::invalid_argument("left direction must be nonzero length p");
      }
    }
    if (framework == Framework::Modified) {
      if (needs_V &&
          static_cast<Eigen::Index>(set.d.size()) != set.k() - 1) {
        throw std::invalid_argument("need k-1 right scaling vectors");
      }
      if (needs_W &&
          static_cast<Eigen::Index>(set.delta.size()) != set.kappa() - 1) {
        throw std::invalid_argument("need kappa-1 left scaling vectors");
      }
    }
    if (needs_V && !set.ell.empty() &&
        static_cast<Eigen::Index>(set.ell.size()) != set.k()) {
      throw std::invalid_argument("need one derivative order per right point");
    }
    if (needs_W && !set.nu.empty() &&
        static_cast<Eigen::Index>(set.nu.size()) != set.kappa()) {
      throw std::invalid_argument("need one derivative order per left point");
    }
    if (identical_points) {
      if (set.k() != set.kappa()) {
        throw std::invalid_argument(
            "identical-point mode requires k == kappa");
      }
      for (Eigen::Index j = 0; j < set.k(); ++j) {
        if (set.sigma[j] != set.varsigma[j]) {
          throw std::invalid_argument(
              "identical-point mode requires sigma_j == varsigma_j");
        }
      }
    }
  }
}

std::vector<Eigen::VectorXcd>
buildVModified(const StructuredBilinearSystem &sys, const PointSet &set,
               const std::vector<Eigen::VectorXcd> &scalings) {
  KSolver solver(sys);
  std::vector<Eigen::VectorXcd> out;
  Eigen::VectorXcd v =
      solver.solve(set.sigma[0], sys.B().eval(set.sigma[0]) * set.b);
  out.push_back(v);
  for (Eigen::Index j = 1; j < set.k(); ++j) {
    v = solver.solve(set.sigma[j],
                     scaledNDerivative(sys, set.sigma[j - 1], scalings[j - 1],
                                       0) *
                         v);
    out.push_back(v);
  }
  return out;
}

std::vector<Eigen::VectorXcd>
buildWModified(const StructuredBilinearSystem &sys, const PointSet &set,
               const std::vector<Eigen::VectorXcd> &scalings) {
  KSolver solver(sys);
  const Eigen::Index kappa = set.kappa();
  std::vector<Eigen::VectorXcd> out;
  Eigen::VectorXcd w = solver.solveAdjoint(
      set.varsigma[kappa - 1],
      sys.C().eval(set.varsigma[kappa - 1]).adjoint() * set.c);
  out.push_back(w);
  // Step i evaluates both K and the scaled bilinear term at varsigma_{kappa-i+1}.
  for (Eigen::Index i = 2; i <= kappa; ++i) {
    const Complex point = set.varsigma[kappa - i];
    w = solver.solveAdjoint(
        point,
        scaledNDerivative(sys, point, scalings[kappa - i], 0).adjoint() * w);
    out.push_back(w);
  }
  return out;
}

RawBlock buildVModifiedHermite(const StructuredBilinearSystem &sys,
                               const PointSet &set,
                               const std::vector<Eigen::VectorXcd> &scalings) {
  KSolver solver(sys);
  const Eigen::Index k = set.k();
  const std::vector<int> ell =
      set.ell.empty() ? zeroOrders(set.sigma.size()) : set.ell;

  RawBlock block;
  std::vector<Eigen::VectorXcd> cols;

  // Level 1: v_{1,j} = d^j (K^-1 B)(sigma_1) b, j = 0..ell_1.
  for (int j = 0; j <= ell[0]; ++j) {
    cols.push_back(kinvBDerivative(solver, sys, set.sigma[0], j, set.b));
    block.provenance.push_back({0, 1, {j}, 0, 'V', 0});
  }

  if (k > 1) {
    // u = d^{ell_1} (scaledN K^-1 B)(sigma_1) b, the carried chain value.
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(sys.n());
    for (int a = 0; a <= ell[0]; ++a) {
      for (int bo = 0; a + bo <= ell[0]; ++bo) {
        const int c = ell[0] - a - bo;
        u += trinomial(ell[0], a, bo) *
             (scaledNDerivative(sys, set.sigma[0], scalings[0], a) *
              solver.solveDerivative(
                  set.sigma[0], bo,
                  sys.B().evalDerivative(set.sigma[0], c) * set.b));
      }
    }

    for (Eigen::Index lvl = 2; lvl <= k; ++lvl) {
      const Complex s = set.sigma[lvl - 1];
      for (int j = 0; j <= ell[lvl - 1]; ++j) {
        cols.push_back(solver.solveDerivative(s, j, u));
        std::vector<int> orders(ell.begin(), ell.begin() + (lvl - 1));
        orders.push_back(j);
        block.provenance.push_back(
            {0, static_cast<int>(lvl), orders, 0, 'V', 0});
      }
      if (lvl < k) {
        // u <- d^{ell_lvl} (scaledN K^-1)(sigma_lvl) u.
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(sys.n());
        for (int a = 0; a <= ell[lvl - 1]; ++a) {
          next += binomial(ell[lvl - 1], a) *
                  (scaledNDerivative(sys, s, scalings[lvl - 1], a) *
                   solver.solveDerivative(s, ell[lvl - 1] - a, u));
        }
        u = std::move(next);
      }
    }
  }

  block.columns.resize(sys.n(), static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) {
    block.columns.col(static_cast<Eigen::Index>(i)) = cols[i];
    block.provenance[i].raw_index = static_cast<int>(i);
  }
  return block;
}

RawBlock buildWModifiedHermite(const StructuredBilinearSystem &sys,
                               const PointSet &set,
                               const std::vector<Eigen::VectorXcd> &scalings) {
  KSolver solver(sys);
  const Eigen::Index kappa = set.kappa();
  const std::vector<int> nu =
      set.nu.empty() ? zeroOrders(set.varsigma.size()) : set.nu;

  RawBlock block;
  std::vector<Eigen::VectorXcd> cols;

  // Level 1: w_{1,i} = [d^i (C K^-1)(varsigma_kappa)]^H c, i = 0..nu_kappa.
  const Complex sK = set.varsigma[kappa - 1];
  for (int i = 0; i <= nu[kappa - 1]; ++i) {
    cols.push_back(ckinvAdjointDerivative(solver, sys, sK, i, set.c));
    block.provenance.push_back({0, 1, {i}, 0, 'W', 0});
  }

  Eigen::VectorXcd u = cols[static_cast<size_t>(nu[kappa - 1])];
  for (Eigen::Index lvl = 2; lvl <= kappa; ++lvl) {
    const Complex s = set.varsigma[kappa - lvl];
    const Eigen::VectorXcd &delta = scalings[kappa - lvl];
    const int top = nu[kappa - lvl];
    Eigen::VectorXcd carried;
    for (int i = 0; i <= top; ++i) {
      // [d^i (scaledN K^-1)(s)]^H u.
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(sys.n());
      for (int a = 0; a <= i; ++a) {
        w += binomial(i, a) *
             solver.solveDerivativeAdjoint(
                 s, i - a,
                 scaledNDerivative(sys, s, delta, a).adjoint() * u);
      }
      cols.push_back(w);
      std::vector<int> orders{i};
      for (Eigen::Index t = kappa - lvl + 1; t < kappa; ++t) {
        orders.push_back(nu[t]);
      }
      block.provenance.push_back({0, static_cast<int>(lvl), orders, 0, 'W', 0});
      if (i == top) {
        carried = w;
      }
    }
    u = std::move(carried);
  }

  block.columns.resize(sys.n(), static_cast<Eigen::Index>(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i) {
    block.columns.col(static_cast<Eigen::Index>(i)) = cols[i];
    block.provenance[i].raw_index = static_cast<int>(i);
  }
  return block;
}

namespace {

// Shared recursion for the blockwise and matrix frameworks. The seed is
// K^-1(sigma_1) B b (blockwise) or K^-1(sigma_1) B (matrix), including the
// Hermite derivative ladders.
RawBlock buildVBlockLike(const StructuredBilinearSystem &sys,
                         const PointSet &set, bool tangential) {
  KSolver solver(sys);
  const Eigen::Index k = set.k();
  const Eigen::Index m = sys.m();
  const std::vector<int> ell =
      set.ell.empty() ? zeroOrders(set.sigma.size()) : set.ell;

  Eigen::MatrixXcd seed =
      tangential ? Eigen::MatrixXcd(sys.B().eval(set.sigma[0]) * set.b)
                 : sys.B().eval(set.sigma[0]);
  // Identity seed for level-1 derivative: d^j (K^-1 B [b]) directly.
  RawBlock block;
  std::vector<Eigen::MatrixXcd> levels;

  Eigen::MatrixXcd seed_dirs =
      tangential ? Eigen::MatrixXcd(set.b) : Eigen::MatrixXcd::Identity(m, m);

  for (int j = 0; j <= ell[0]; ++j) {
    Eigen::MatrixXcd cols =
        kinvBDerivative(solver, sys, set.sigma[0], j, seed_dirs);
    levels.push_back(cols);
    for (Eigen::Index col = 0; col < cols.cols(); ++col) {
      block.provenance.push_back(
          {0, 1, {j}, static_cast<int>(col), 'V', 0});
    }
  }

  if (k > 1) {
    // Carried value: per-block d^{ell_1}(N_i K^-1 B [b])(sigma_1).
    const Eigen::Index w0 = seed_dirs.cols();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(sys.n(), m * w0);
    for (int a = 0; a <= ell[0]; ++a) {
      for (int bo = 0; a + bo <= ell[0]; ++bo) {
        const int c = ell[0] - a - bo;
        Eigen::MatrixXcd core = solver.solveDerivative(
            set.sigma[0], bo,
            sys.B().evalDerivative(set.sigma[0], c) * seed_dirs);
        const double wgt = trinomial(ell[0], a, bo);
        for (Eigen::Index i = 0; i < m; ++i) {
          u.middleCols(i * w0, w0) +=
              wgt * (sys.N(i).evalDerivative(set.sigma[0], a) * core);
        }
      }
    }

    for (Eigen::Index lvl = 2; lvl <= k; ++lvl) {
      const Complex s = set.sigma[lvl - 1];
      for (int j = 0; j <= ell[lvl - 1]; ++j) {
        Eigen::MatrixXcd cols = solver.solveDerivative(s, j, u);
        levels.push_back(cols);
        std::vector<int> orders(ell.begin(), ell.begin() + (lvl - 1));
        orders.push_back(j);
        for (Eigen::Index col = 0; col < cols.cols(); ++col) {
          block.provenance.push_back({0, static_cast<int>(lvl), orders,
                                      static_cast<int>(col), 'V', 0});
        }
      }
      if (lvl < k) {
        const Eigen::Index w = u.cols();
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(sys.n(), m * w);
        for (int a = 0; a <= ell[lvl - 1]; ++a) {
          Eigen::MatrixXcd core =
              solver.solveDerivative(s, ell[lvl - 1] - a, u);
          const double wgt = binomial(ell[lvl - 1], a);
          for (Eigen::Index i = 0; i < m; ++i) {
            next.middleCols(i * w, w) +=
                wgt * (sys.N(i).evalDerivative(s, a) * core);
          }
        }
        u = std::move(next);
      }
    }
  }

  Eigen::Index total = 0;
  for (const auto &lv : levels) {
    total += lv.cols();
  }
  block.columns.resize(sys.n(), total);
  Eigen::Index at = 0;
  for (const auto &lv : levels) {
    block.columns.middleCols(at, lv.cols()) = lv;
    at += lv.cols();
  }
  for (size_t i = 0; i < block.provenance.size(); ++i) {
    block.provenance[i].raw_index = static_cast<int>(i);
  }
  return block;
}

RawBlock buildWBlockLike(const StructuredBilinearSystem &sys,
                         const PointSet &set, bool tangential) {
  KSolver solver(sys);
  const Eigen::Index kappa = set.kappa();
  const Eigen::Index m = sys.m();
  const std::vector<int> nu =
      set.nu.empty() ? zeroOrders(set.varsigma.size()) : set.nu;

  RawBlock block;
  std::vector<Eigen::MatrixXcd> levels;

  const Complex sK = set.varsigma[kappa - 1];
  Eigen::MatrixXcd seed =
      tangential ? Eigen::MatrixXcd(set.c)
                 : Eigen::MatrixXcd::Identity(sys.p(), sys.p());

  for (int i = 0; i <= nu[kappa - 1]; ++i) {
    Eigen::MatrixXcd cols = ckinvAdjointDerivative(solver, sys, sK, i, seed);
    levels.push_back(cols);
    for (Eigen::Index col = 0; col < cols.cols(); ++col) {
      block.provenance.push_back({0, 1, {i}, static_cast<int>(col), 'W', 0});
    }
  }

  Eigen::MatrixXcd u = levels.back();
  for (Eigen::Index lvl = 2; lvl <= kappa; ++lvl) {
    const Complex s = set.varsigma[kappa - lvl];
    const int top = nu[kappa - lvl];
    const Eigen::Index w = u.cols();
    Eigen::MatrixXcd carried;
    for (int i = 0; i <= top; ++i) {
      // Per block j: [d^i (N_j K^-1)(s)]^H applied to u.
      Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(sys.n(), m * w);
      for (int a = 0; a <= i; ++a) {
        const double wgt = binomial(i, a);
        for (Eigen::Index jb = 0; jb < m; ++jb) {
          cols.middleCols(jb * w, w) +=
              wgt * solver.solveDerivativeAdjoint(
                        s, i - a,
                        sys.N(jb).evalDerivative(s, a).adjoint() * u);
        }
      }
      levels.push_back(cols);
      std::vector<int> orders{i};
      for (Eigen::Index t = kappa - lvl + 1; t < kappa; ++t) {
        orders.push_back(nu[t]);
      }
      for (Eigen::Index col = 0; col < cols.cols(); ++col) {
        block.provenance.push_back(
            {0, static_cast<int>(lvl), orders, static_cast<int>(col), 'W', 0});
      }
      if (i == top) {
        carried = cols;
      }
    }
    u = std::move(carried);
  }

  Eigen::Index total = 0;
  for (const auto &lv : levels) {
    total += lv.cols();
  }
  block.columns.resize(sys.n(), total);
  Eigen::Index at = 0;
  for (const auto &lv : levels) {
    block.columns.middleCols(at, lv.cols()) = lv;
    at += lv.cols();
  }
  for (size_t i = 0; i < block.provenance.size(); ++i) {
    block.provenance[i].raw_index = static_cast<int>(i);
  }
  return block;
}

} // namespace

RawBlock buildVBlockwise(const StructuredBilinearSystem &sys,
                         const PointSet &set) {
  return buildVBlockLike(sys, set, true);
}

RawBlock buildWBlockwise(const StructuredBilinearSystem &sys,
                         const PointSet &set) {
  return buildWBlockLike(sys, set, true);
}

RawBlock buildVMatrix(const StructuredBilinearSystem &sys,
                      const PointSet &set) {
  return buildVBlockLike(sys, set, false);
}

RawBlock buildWMatrix(const StructuredBilinearSystem &sys,
                      const PointSet &set) {
  return buildWBlockLike(sys, set, false);
}

namespace {

struct OrthResult {
  Eigen::MatrixXcd Q;
  std::vector<ConditionDescriptor> provenance;
};

// Modified Gram-Schmidt with one reorthogonalization pass and rank
// truncation at trunc_tol times the largest raw column norm.
OrthResult orthogonalize(const Eigen::MatrixXcd &raw,
                         const std::vector<ConditionDescriptor> &provenance,
                         double trunc_tol) {
  const Eigen::Index n = raw.rows();
  // Raw column norms span many orders of magnitude across wide frequency
  // ranges; normalizing first keeps the truncation tolerance relative to
  // each direction instead of to the largest column.
  Eigen::MatrixXcd scaled = raw;
  double max_norm = 0.0;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    const double norm = scaled.col(j).norm();
    if (norm > 0.0) {
      scaled.col(j) /= norm;
    }
    max_norm = std::max(max_norm, scaled.col(j).norm());
  }
  const double tol =
      std::max(trunc_tol * std::max(max_norm, 1e-300), 1e-300);

  OrthResult out;
  out.Q.resize(n, raw.cols());
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    Eigen::VectorXcd v = scaled.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < r; ++i) {
        v -= out.Q.col(i) * (out.Q.col(i).dot(v));
      }
    }
    const double norm = v.norm();
    if (norm > tol) {
      out.Q.col(r) = v / norm;
      out.provenance.push_back(provenance[static_cast<size_t>(j)]);
      ++r;
    }
  }
  out.Q.conservativeResize(n, r);
  return out;
}

// Replaces every complex raw column by its real and imaginary parts.
void realifyColumns(Eigen::MatrixXcd &raw,
                    std::vector<ConditionDescriptor> &provenance) {
  Eigen::MatrixXcd out(raw.rows(), 2 * raw.cols());
  std::vector<ConditionDescriptor> prov;
  prov.reserve(provenance.size() * 2);
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    out.col(2 * j) = raw.col(j).real().cast<Complex>();
    out.col(2 * j + 1) = raw.col(j).imag().cast<Complex>();
    prov.push_back(provenance[static_cast<size_t>(j)]);
    prov.push_back(provenance[static_cast<size_t>(j)]);
  }
  raw = std::move(out);
  provenance = std::move(prov);
}

} // namespace

Eigen::Index rawWidthPerSetV(Framework fw, Eigen::Index k, Eigen::Index m) {
  switch (fw) {
  case Framework::BwtInt: {
    Eigen::Index total = 0;
    Eigen::Index w = 1;
    for (Eigen::Index j = 1; j <= k; ++j, w *= m) {
      total += w;
    }
    return total;
  }
  case Framework::MtxInt: {
    Eigen::Index total = 0;
    Eigen::Index w = m;
    for (Eigen::Index j = 1; j <= k; ++j, w *= m) {
      total += w;
    }
    return total;
  }
  default:
    return k;
  }
}

Eigen::Index rawWidthPerSetW(Framework fw, Eigen::Index kappa, Eigen::Index m,
                             Eigen::Index p) {
  switch (fw) {
  case Framework::BwtInt: {
    Eigen::Index total = 0;
    Eigen::Index w = 1;
    for (Eigen::Index j = 1; j <= kappa; ++j, w *= m) {
      total += w;
    }
    return total;
  }
  case Framework::MtxInt: {
    Eigen::Index total = 0;
    Eigen::Index w = p;
    for (Eigen::Index j = 1; j <= kappa; ++j, w *= m) {
      total += w;
    }
    return total;
  }
  default:
    return kappa;
  }
}

ReductionBases assembleBases(const StructuredBilinearSystem &sys,
                             const InterpolationSpec &spec) {
  spec.validate(sys.m(), sys.p());
  const bool needs_V = spec.side != ProjectionSide::OneSidedW;
  const bool needs_W = spec.side != ProjectionSide::OneSidedV;

  Eigen::MatrixXcd rawV(sys.n(), 0);
  Eigen::MatrixXcd rawW(sys.n(), 0);
  std::vector<ConditionDescriptor> provV;
  std::vector<ConditionDescriptor> provW;

  auto append = [](Eigen::MatrixXcd &raw,
                   std::vector<ConditionDescriptor> &prov, RawBlock block,
                   int set_index) {
    const Eigen::Index old = raw.cols();
    raw.conservativeResize(Eigen::NoChange, old + block.columns.cols());
    raw.rightCols(block.columns.cols()) = block.columns;
    for (ConditionDescriptor desc : block.provenance) {
      desc.set = set_index;
      desc.raw_index += static_cast<int>(old);
      prov.push_back(desc);
    }
  };

  for (size_t si = 0; si < spec.sets.size(); ++si) {
    const PointSet &set = spec.sets[si];
    if (needs_V) {
      RawBlock block;
      switch (spec.framework) {
      case Framework::BwtInt:
        block = buildVBlockwise(sys, set);
        break;
      case Framework::MtxInt:
        block = buildVMatrix(sys, set);
        break;
      default:
        block = buildVModifiedHermite(sys, set, spec.scalingsFor(set, false));
        break;
      }
      append(rawV, provV, std::move(block), static_cast<int>(si));
    }
    if (needs_W) {
      RawBlock block;
      switch (spec.framework) {
      case Framework::BwtInt:
        block = buildWBlockwise(sys, set);
        break;
      case Framework::MtxInt:
        block = buildWMatrix(sys, set);
        break;
      default:
        block = buildWModifiedHermite(sys, set, spec.scalingsFor(set, true));
        break;
      }
      append(rawW, provW, std::move(block), static_cast<int>(si));
    }
  }

  ReductionBases bases;
  bases.raw_width_V = rawV.cols();
  bases.raw_width_W = rawW.cols();
  bases.real_valued = spec.realify;

  if (spec.realify) {
    if (needs_V) {
      realifyColumns(rawV, provV);
    }
    if (needs_W) {
      realifyColumns(rawW, provW);
    }
  }

  if (needs_V) {
    OrthResult ov = orthogonalize(rawV, provV, spec.truncation_tol);
    bases.V = std::move(ov.Q);
    bases.provenance_V = std::move(ov.provenance);
    if (bases.V.cols() == 0) {
      throw std::runtime_error("empty trial basis after rank truncation");
    }
  }
  if (needs_W) {
    OrthResult ow = orthogonalize(rawW, provW, spec.truncation_tol);
    bases.W = std::move(ow.Q);
    bases.provenance_W = std::move(ow.provenance);
    if (bases.W.cols() == 0) {
      throw std::runtime_error("empty test basis after rank truncation");
    }
  }

  switch (spec.side) {
  case ProjectionSide::OneSidedV:
    bases.W = bases.V;
    bases.provenance_W = bases.provenance_V;
    bases.raw_width_W = bases.raw_width_V;
    break;
  case ProjectionSide::OneSidedW:
    bases.V = bases.W;
    bases.provenance_V = bases.provenance_W;
    bases.raw_width_V = bases.raw_width_W;
    break;
  case ProjectionSide::TwoSided:
    // Square reduced K(s) requires equal ranks; drop trailing columns of the
    // larger basis.
    if (bases.V.cols() > bases.W.cols()) {
      bases.V.conservativeResize(Eigen::NoChange, bases.W.cols());
      bases.provenance_V.resize(static_cast<size_t>(bases.W.cols()));
    } else if (bases.W.cols() > bases.V.cols()) {
      bases.W.conservativeResize(Eigen::NoChange, bases.V.cols());
      bases.provenance_W.resize(static_cast<size_t>(bases.V.cols()));
    }
    break;
  }

  return bases;
}

} // namespace bilintang
