// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_STRUCTURES_HPP
#define BILINTANG_STRUCTURES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bilintang {

using Complex = std::complex<double>;

/// Thrown when a frequency-dependent matrix is numerically singular at an
/// evaluation point. Carries the offending point for diagnostics.
class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(const std::string &what, Complex point)
      : std::runtime_error(what), point_(point) {}
  Complex point() const { return point_; }

private:
  Complex point_;
};

/// Scalar coefficient function of one complex variable. Either a monomial
/// s^degree (degree 0..2) or a delay exponential e^(-tau*s) with tau > 0.
/// All derivatives are closed-form.
class ScalarBasis {
public:
  enum class Kind { Monomial, DelayExponential };

  static ScalarBasis monomial(int degree);
  static ScalarBasis delayExponential(double tau);

  Complex eval(Complex s) const;
  Complex evalDerivative(Complex s, int order) const;

  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  double tau() const { return tau_; }

  bool operator==(const ScalarBasis &other) const;

private:
  ScalarBasis(Kind kind, int degree, double tau)
      : kind_(kind), degree_(degree), tau_(tau) {}

  Kind kind_;
  int degree_ = 0;
  double tau_ = 0.0;
};

/// Matrix-valued function of one complex variable stored as a finite sum of
/// scalar basis functions times constant coefficient matrices. All terms
/// share the same shape.
class MatrixFunction {
public:
  struct Term {
    ScalarBasis basis;
    Eigen::MatrixXcd coefficient;
  };

  MatrixFunction(Eigen::Index rows, Eigen::Index cols);

  static MatrixFunction constant(Eigen::MatrixXcd matrix);
  static MatrixFunction zero(Eigen::Index rows, Eigen::Index cols);

  void addTerm(const ScalarBasis &basis, Eigen::MatrixXcd coefficient);

  Eigen::MatrixXcd eval(Complex s) const;
  Eigen::MatrixXcd evalDerivative(Complex s, int order) const;

  /// Coefficient matrix of the term with the given basis, or nullptr.
  const Eigen::MatrixXcd *coefficientFor(const ScalarBasis &basis) const;

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::vector<Term> &terms() const { return terms_; }

  /// True when every coefficient matrix has negligible imaginary part.
  bool isReal(double tol = 0.0) const;

private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Term> terms_;
};

enum class TemplateTag { FirstOrder, SecondOrder, TimeDelay, Custom };

std::string templateTagName(TemplateTag tag);
TemplateTag templateTagFromName(const std::string &name);

/// Structured bilinear system C(s), K(s), B(s), {N_j(s)} with dimensions
/// (n, m, p). Immutable after construction.
class StructuredBilinearSystem {
public:
  StructuredBilinearSystem(MatrixFunction C, MatrixFunction K, MatrixFunction B,
                           std::vector<MatrixFunction> N, TemplateTag tag,
                           double delay = 0.0);

  Eigen::Index n() const { return K_.rows(); }
  Eigen::Index m() const { return static_cast<Eigen::Index>(N_.size()); }
  Eigen::Index p() const { return C_.rows(); }

  const MatrixFunction &C() const { return C_; }
  const MatrixFunction &K() const { return K_; }
  const MatrixFunction &B() const { return B_; }
  const MatrixFunction &N(Eigen::Index j) const { return N_.at(j); }
  const std::vector<MatrixFunction> &Nall() const { return N_; }

  TemplateTag tag() const { return tag_; }
  double delay() const { return delay_; }

private:
  MatrixFunction C_;
  MatrixFunction K_;
  MatrixFunction B_;
  std::vector<MatrixFunction> N_;
  TemplateTag tag_;
  double delay_;
};

// Template constructors. All matrices real-valued on entry; shapes are
// validated and mismatches reported with the offending matrix name.

/// K(s) = s*E - A, constant C, B, N_j.
StructuredBilinearSystem makeFirstOrder(const Eigen::MatrixXd &E,
                                        const Eigen::MatrixXd &A,
                                        const std::vector<Eigen::MatrixXd> &N,
                                        const Eigen::MatrixXd &B,
                                        const Eigen::MatrixXd &C);

/// K(s) = s^2*M + s*D + K0, C(s) = Cp + s*Cv, N_j(s) = Np_j + s*Nv_j,
/// constant Bu.
StructuredBilinearSystem makeSecondOrder(const Eigen::MatrixXd &M,
                                         const Eigen::MatrixXd &D,
                                         const Eigen::MatrixXd &K0,
                                         const std::vector<Eigen::MatrixXd> &Np,
                                         const std::vector<Eigen::MatrixXd> &Nv,
                                         const Eigen::MatrixXd &Bu,
                                         const Eigen::MatrixXd &Cp,
                                         const Eigen::MatrixXd &Cv);

/// K(s) = s*I - A - e^(-tau*s)*Ad, constant C, B, N_j.
StructuredBilinearSystem makeTimeDelay(const Eigen::MatrixXd &A,
                                       const Eigen::MatrixXd &Ad,
                                       const std::vector<Eigen::MatrixXd> &N,
                                       const Eigen::MatrixXd &B,
                                       const Eigen::MatrixXd &C, double tau);

// Coefficient extraction by template. Used for serialization, simulation and
// the template round-trip property. Throws std::invalid_argument when the
// system does not carry the requested template tag.

struct FirstOrderParts {
  Eigen::MatrixXcd E, A, B, C;
  std::vector<Eigen::MatrixXcd> N;
};

struct SecondOrderParts {
  Eigen::MatrixXcd M, D, K, Bu, Cp, Cv;
  std::vector<Eigen::MatrixXcd> Np, Nv;
};

struct TimeDelayParts {
  Eigen::MatrixXcd E, A, Ad, B, C;
  std::vector<Eigen::MatrixXcd> N;
  double tau = 0.0;
};

FirstOrderParts extractFirstOrder(const StructuredBilinearSystem &sys);
SecondOrderParts extractSecondOrder(const StructuredBilinearSystem &sys);
TimeDelayParts extractTimeDelay(const StructuredBilinearSystem &sys);

} // namespace bilintang

#endif // BILINTANG_STRUCTURES_HPP
