// SPDX-License-Identifier: Apache-2.0
#include "bilintang/structures.hpp"

#include <cmath>

namespace bilintang {

namespace {

void checkShape(const Eigen::MatrixXd &M, Eigen::Index rows, Eigen::Index cols,
                const std::string &name) {
  if (M.rows() != rows || M.cols() != cols) {
    throw std::invalid_argument("matrix '" + name + "' has shape " +
                                std::to_string(M.rows()) + "x" +
                                std::to_string(M.cols()) + ", expected " +
                                std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

} // namespace

ScalarBasis ScalarBasis::monomial(int degree) {
  if (degree < 0 || degree > 2) {
    throw std::invalid_argument("monomial degree must be in {0, 1, 2}, got " +
                                std::to_string(degree));
  }
  return ScalarBasis(Kind::Monomial, degree, 0.0);
}

ScalarBasis ScalarBasis::delayExponential(double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("delay exponential requires tau > 0");
  }
  return ScalarBasis(Kind::DelayExponential, 0, tau);
}

Complex ScalarBasis::eval(Complex s) const {
  if (kind_ == Kind::Monomial) {
    switch (degree_) {
    case 0:
      return Complex(1.0, 0.0);
    case 1:
      return s;
    default:
      return s * s;
    }
  }
  return std::exp(-tau_ * s);
}

Complex ScalarBasis::evalDerivative(Complex s, int order) const {
  if (order < 0) {
    throw std::invalid_argument("derivative order must be nonnegative");
  }
  if (order == 0) {
    return eval(s);
  }
  if (kind_ == Kind::Monomial) {
    if (order > degree_) {
      return Complex(0.0, 0.0);
    }
    // Falling factorial degree * (degree-1) * ... times lower monomial.
    double factor = 1.0;
    for (int i = 0; i < order; ++i) {
      factor *= static_cast<double>(degree_ - i);
    }
    int rem = degree_ - order;
    Complex mono = rem == 0 ? Complex(1.0, 0.0) : (rem == 1 ? s : s * s);
    return factor * mono;
  }
  return std::pow(Complex(-tau_, 0.0), order) * std::exp(-tau_ * s);
}

bool ScalarBasis::operator==(const ScalarBasis &other) const {
  if (kind_ != other.kind_) {
    return false;
  }
  if (kind_ == Kind::Monomial) {
    return degree_ == other.degree_;
  }
  return tau_ == other.tau_;
}

MatrixFunction::MatrixFunction(Eigen::Index rows, Eigen::Index cols)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("matrix function shape must be positive");
  }
}

MatrixFunction MatrixFunction::constant(Eigen::MatrixXcd matrix) {
  MatrixFunction f(matrix.rows(), matrix.cols());
  f.addTerm(ScalarBasis::monomial(0), std::move(matrix));
  return f;
}

MatrixFunction MatrixFunction::zero(Eigen::Index rows, Eigen::Index cols) {
  return MatrixFunction(rows, cols);
}

void MatrixFunction::addTerm(const ScalarBasis &basis,
                             Eigen::MatrixXcd coefficient) {
  if (coefficient.rows() != rows_ || coefficient.cols() != cols_) {
    throw std::invalid_argument(
        "term coefficient shape mismatch: expected " + std::to_string(rows_) +
        "x" + std::to_string(cols_) + ", got " +
        std::to_string(coefficient.rows()) + "x" +
        std::to_string(coefficient.cols()));
  }
  terms_.push_back(Term{basis, std::move(coefficient)});
}

Eigen::MatrixXcd MatrixFunction::eval(Complex s) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_, cols_);
  for (const Term &term : terms_) {
    out += term.basis.eval(s) * term.coefficient;
  }
  return out;
}

Eigen::MatrixXcd MatrixFunction::evalDerivative(Complex s, int order) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows_, cols_);
  for (const Term &term : terms_) {
    Complex factor = term.basis.evalDerivative(s, order);
    if (factor != Complex(0.0, 0.0)) {
      out += factor * term.coefficient;
    }
  }
  return out;
}

const Eigen::MatrixXcd *
MatrixFunction::coefficientFor(const ScalarBasis &basis) const {
  for (const Term &term : terms_) {
    if (term.basis == basis) {
      return &term.coefficient;
    }
  }
  return nullptr;
}

bool MatrixFunction::isReal(double tol) const {
  for (const Term &term : terms_) {
    if (term.coefficient.imag().cwiseAbs().maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

std::string templateTagName(TemplateTag tag) {
  switch (tag) {
  case TemplateTag::FirstOrder:
    return "first_order";
  case TemplateTag::SecondOrder:
    return "second_order";
  case TemplateTag::TimeDelay:
    return "time_delay";
  default:
    return "custom";
  }
}

TemplateTag templateTagFromName(const std::string &name) {
  if (name == "first_order") {
    return TemplateTag::FirstOrder;
  }
  if (name == "second_order") {
    return TemplateTag::SecondOrder;
  }
  if (name == "time_delay") {
    return TemplateTag::TimeDelay;
  }
  if (name == "custom") {
    return TemplateTag::Custom;
  }
  throw std::invalid_argument("unknown template tag '" + name + "'");
}

StructuredBilinearSystem::StructuredBilinearSystem(
    MatrixFunction C, MatrixFunction K, MatrixFunction B,
    std::vector<MatrixFunction> N, TemplateTag tag, double delay)
    : C_(std::move(C)), K_(std::move(K)), B_(std::move(B)), N_(std::move(N)),
      tag_(tag), delay_(delay) {
  const Eigen::Index n = K_.rows();
  if (K_.cols() != n) {
    throw std::invalid_argument("K must be square");
  }
  if (C_.cols() != n) {
    throw std::invalid_argument("C must have n columns");
  }
  if (B_.rows() != n) {
    throw std::invalid_argument("B must have n rows");
  }
  if (N_.empty()) {
    throw std::invalid_argument("at least one bilinear term required");
  }
  if (B_.cols() != static_cast<Eigen::Index>(N_.size())) {
    throw std::invalid_argument("number of bilinear terms must equal the "
                                "number of inputs (columns of B)");
  }
  for (const MatrixFunction &Nj : N_) {
    if (Nj.rows() != n || Nj.cols() != n) {
      throw std::invalid_argument("every N_j must be n x n");
    }
  }
}

StructuredBilinearSystem makeFirstOrder(const Eigen::MatrixXd &E,
                                        const Eigen::MatrixXd &A,
                                        const std::vector<Eigen::MatrixXd> &N,
                                        const Eigen::MatrixXd &B,
                                        const Eigen::MatrixXd &C) {
  const Eigen::Index n = A.rows();
  checkShape(E, n, n, "E");
  checkShape(A, n, n, "A");
  const Eigen::Index m = B.cols();
  checkShape(B, n, m, "B");
  if (C.cols() != n) {
    throw std::invalid_argument("matrix 'C' must have n columns");
  }
  if (static_cast<Eigen::Index>(N.size()) != m) {
    throw std::invalid_argument("need one N_j per input");
  }

  MatrixFunction Kf(n, n);
  Kf.addTerm(ScalarBasis::monomial(1), E.cast<Complex>());
  Kf.addTerm(ScalarBasis::monomial(0), (-A).cast<Complex>());

  std::vector<MatrixFunction> Nf;
  Nf.reserve(N.size());
  for (Eigen::Index j = 0; j < m; ++j) {
    checkShape(N[j], n, n, "N" + std::to_string(j + 1));
    Nf.push_back(MatrixFunction::constant(N[j].cast<Complex>()));
  }

  return StructuredBilinearSystem(
      MatrixFunction::constant(C.cast<Complex>()), std::move(Kf),
      MatrixFunction::constant(B.cast<Complex>()), std::move(Nf),
      TemplateTag::FirstOrder);
}

StructuredBilinearSystem makeSecondOrder(const Eigen::MatrixXd &M,
                                         const Eigen::MatrixXd &D,
                                         const Eigen::MatrixXd &K0,
                                         const std::vector<Eigen::MatrixXd> &Np,
                                         const std::vector<Eigen::MatrixXd> &Nv,
                                         const Eigen::MatrixXd &Bu,
                                         const Eigen::MatrixXd &Cp,
                                         const Eigen::MatrixXd &Cv) {
  const Eigen::Index n = M.rows();
  checkShape(M, n, n, "M");
  checkShape(D, n, n, "D");
  checkShape(K0, n, n, "K");
  const Eigen::Index m = Bu.cols();
  checkShape(Bu, n, m, "Bu");
  const Eigen::Index p = Cp.rows();
  checkShape(Cp, p, n, "Cp");
  checkShape(Cv, p, n, "Cv");
  if (static_cast<Eigen::Index>(Np.size()) != m ||
      static_cast<Eigen::Index>(Nv.size()) != m) {
    throw std::invalid_argument("need one Np_j and Nv_j per input");
  }

  MatrixFunction Kf(n, n);
  Kf.addTerm(ScalarBasis::monomial(2), M.cast<Complex>());
  Kf.addTerm(ScalarBasis::monomial(1), D.cast<Complex>());
  Kf.addTerm(ScalarBasis::monomial(0), K0.cast<Complex>());

  MatrixFunction Cf(p, n);
  Cf.addTerm(ScalarBasis::monomial(0), Cp.cast<Complex>());
  Cf.addTerm(ScalarBasis::monomial(1), Cv.cast<Complex>());

  std::vector<MatrixFunction> Nf;
  Nf.reserve(Np.size());
  for (Eigen::Index j = 0; j < m; ++j) {
    checkShape(Np[j], n, n, "Np" + std::to_string(j + 1));
    checkShape(Nv[j], n, n, "Nv" + std::to_string(j + 1));
    MatrixFunction Nj(n, n);
    Nj.addTerm(ScalarBasis::monomial(0), Np[j].cast<Complex>());
    Nj.addTerm(ScalarBasis::monomial(1), Nv[j].cast<Complex>());
    Nf.push_back(std::move(Nj));
  }

  return StructuredBilinearSystem(
      std::move(Cf), std::move(Kf),
      MatrixFunction::constant(Bu.cast<Complex>()), std::move(Nf),
      TemplateTag::SecondOrder);
}

StructuredBilinearSystem makeTimeDelay(const Eigen::MatrixXd &A,
                                       const Eigen::MatrixXd &Ad,
                                       const std::vector<Eigen::MatrixXd> &N,
                                       const Eigen::MatrixXd &B,
                                       const Eigen::MatrixXd &C, double tau) {
  const Eigen::Index n = A.rows();
  checkShape(A, n, n, "A");
  checkShape(Ad, n, n, "Ad");
  const Eigen::Index m = B.cols();
  checkShape(B, n, m, "B");
  if (C.cols() != n) {
    throw std::invalid_argument("matrix 'C' must have n columns");
  }
  if (static_cast<Eigen::Index>(N.size()) != m) {
    throw std::invalid_argument("need one N_j per input");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("delay tau must be positive");
  }

  MatrixFunction Kf(n, n);
  Kf.addTerm(ScalarBasis::monomial(1),
             Eigen::MatrixXcd::Identity(n, n));
  Kf.addTerm(ScalarBasis::monomial(0), (-A).cast<Complex>());
  Kf.addTerm(ScalarBasis::delayExponential(tau), (-Ad).cast<Complex>());

  std::vector<MatrixFunction> Nf;
  Nf.reserve(N.size());
  for (Eigen::Index j = 0; j < m; ++j) {
    checkShape(N[j], n, n, "N" + std::to_string(j + 1));
    Nf.push_back(MatrixFunction::constant(N[j].cast<Complex>()));
  }

  return StructuredBilinearSystem(
      MatrixFunction::constant(C.cast<Complex>()), std::move(Kf),
      MatrixFunction::constant(B.cast<Complex>()), std::move(Nf),
      TemplateTag::TimeDelay, tau);
}

namespace {

Eigen::MatrixXcd coefficientOrZero(const MatrixFunction &f,
                                   const ScalarBasis &basis) {
  const Eigen::MatrixXcd *coeff = f.coefficientFor(basis);
  if (coeff != nullptr) {
    return *coeff;
  }
  return Eigen::MatrixXcd::Zero(f.rows(), f.cols());
}

} // namespace

FirstOrderParts extractFirstOrder(const StructuredBilinearSystem &sys) {
  if (sys.tag() != TemplateTag::FirstOrder) {
    throw std::invalid_argument("system is not a first-order template");
  }
  FirstOrderParts parts;
  parts.E = coefficientOrZero(sys.K(), ScalarBasis::monomial(1));
  parts.A = -coefficientOrZero(sys.K(), ScalarBasis::monomial(0));
  parts.B = coefficientOrZero(sys.B(), ScalarBasis::monomial(0));
  parts.C = coefficientOrZero(sys.C(), ScalarBasis::monomial(0));
  for (Eigen::Index j = 0; j < sys.m(); ++j) {
    parts.N.push_back(coefficientOrZero(sys.N(j), ScalarBasis::monomial(0)));
  }
  return parts;
}

SecondOrderParts extractSecondOrder(const StructuredBilinearSystem &sys) {
  if (sys.tag() != TemplateTag::SecondOrder) {
    throw std::invalid_argument("system is not a second-order template");
  }
  SecondOrderParts parts;
  parts.M = coefficientOrZero(sys.K(), ScalarBasis::monomial(2));
  parts.D = coefficientOrZero(sys.K(), ScalarBasis::monomial(1));
  parts.K = coefficientOrZero(sys.K(), ScalarBasis::monomial(0));
  parts.Bu = coefficientOrZero(sys.B(), ScalarBasis::monomial(0));
  parts.Cp = coefficientOrZero(sys.C(), ScalarBasis::monomial(0));
  parts.Cv = coefficientOrZero(sys.C(), ScalarBasis::monomial(1));
  for (Eigen::Index j = 0; j < sys.m(); ++j) {
    parts.Np.push_back(coefficientOrZero(sys.N(j), ScalarBasis::monomial(0)));
    parts.Nv.push_back(coefficientOrZero(sys.N(j), ScalarBasis::monomial(1)));
  }
  return parts;
}

TimeDelayParts extractTimeDelay(const StructuredBilinearSystem &sys) {
  if (sys.tag() != TemplateTag::TimeDelay) {
    throw std::invalid_argument("system is not a time-delay template");
  }
  TimeDelayParts parts;
  parts.tau = sys.delay();
  parts.E = coefficientOrZero(sys.K(), ScalarBasis::monomial(1));
  parts.A = -coefficientOrZero(sys.K(), ScalarBasis::monomial(0));
  parts.Ad =
      -coefficientOrZero(sys.K(), ScalarBasis::delayExponential(parts.tau));
  parts.B = coefficientOrZero(sys.B(), ScalarBasis::monomial(0));
  parts.C = coefficientOrZero(sys.C(), ScalarBasis::monomial(0));
  for (Eigen::Index j = 0; j < sys.m(); ++j) {
    parts.N.push_back(coefficientOrZero(sys.N(j), ScalarBasis::monomial(0)));
  }
  return parts;
}

} // namespace bilintang
