// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_VERIFY_HPP
#define BILINTANG_VERIFY_HPP

#include <iosfwd>

#include "bilintang/rom.hpp"
#include "bilintang/simulate.hpp"

namespace bilintang {

/// Numerical certificate for a single interpolation condition.
struct ConditionReport {
  std::string id;
  double lhs_norm = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  bool pass = false;
  /// Set when the reduced K is nearly singular at a condition point
  /// (cond > 1e12); such reports are excluded from aggregation.
  bool ill_conditioned = false;
};

/// Default relative pass tolerance.
inline constexpr double kDefaultConditionTol = 1e-8;

/// Value conditions of the tangential frameworks (right, left, and for
/// two-sided runs the mixed conditions with arbitrary middle scalings z,
/// plus the identical-point gradient conditions). Derivative orders in the
/// spec are ignored (treated as zero).
std::vector<ConditionReport> checkTangential(const StructuredBilinearSystem &sys,
                                             const ReducedModel &rom,
                                             const InterpolationSpec &spec,
                                             double tol = kDefaultConditionTol);

/// Hermite (derivative) conditions; with all orders zero this emits the same
/// report set as checkTangential. For identical-point two-sided specs the
/// full Jacobian conditions (frequency and scaling-vector partials) are
/// included.
std::vector<ConditionReport> checkHermite(const StructuredBilinearSystem &sys,
                                          const ReducedModel &rom,
                                          const InterpolationSpec &spec,
                                          double tol = kDefaultConditionTol);

/// Blockwise (BwtInt) and full-matrix (MtxInt) conditions, including the
/// Hermite and identical-point variants.
std::vector<ConditionReport> checkBlockwise(const StructuredBilinearSystem &sys,
                                            const ReducedModel &rom,
                                            const InterpolationSpec &spec,
                                            double tol = kDefaultConditionTol);

/// Dispatches on spec.framework (and on the presence of derivative orders).
std::vector<ConditionReport> checkConditions(const StructuredBilinearSystem &sys,
                                             const ReducedModel &rom,
                                             const InterpolationSpec &spec,
                                             double tol = kDefaultConditionTol);

/// True when every report passes, ignoring ill-conditioned ones.
bool allPass(const std::vector<ConditionReport> &reports);

/// max_t ||y - yr||_2 / ||y||_2 over the shared grid; times with
/// ||y||_2 < 1e-14 are excluded. Throws when the reference output is
/// identically zero.
double errSim(const Trajectory &full, const Trajectory &reduced);

struct GridErrors {
  std::vector<double> w1;       // frequency grid (rad/s)
  std::vector<double> relerr1;  // per-point spectral-norm relative error, G1
  Eigen::MatrixXd relerr2;      // (w1 x w2) grid for G2
  std::vector<double> w2;
  double err_G1 = 0.0;
  double err_G2 = 0.0;
};

/// Relative spectral-norm errors of G1 on i*logspace(a1, b1, n1) and of G2
/// on the n2 x n2 tensor grid (n2 = 0 skips the G2 sweep).
GridErrors gridErrors(const StructuredBilinearSystem &sys,
                      const StructuredBilinearSystem &red, double a1, double b1,
                      int n1, double a2, double b2, int n2);

/// G1 samples at s = i*logspace(a, b, n); lets callers reuse an expensive
/// full-model sweep across several reduced models.
std::vector<Eigen::MatrixXcd> sweepG1(const StructuredBilinearSystem &sys,
                                      double a, double b, int n);
double maxRelSpectralError(const std::vector<Eigen::MatrixXcd> &ref,
                           const std::vector<Eigen::MatrixXcd> &test);

void writeReportsJson(const std::string &path,
                      const std::vector<ConditionReport> &reports);
void printReportsTable(std::ostream &out,
                       const std::vector<ConditionReport> &reports);
void writeGridCsv(const std::string &path, const GridErrors &grid);

} // namespace bilintang

#endif // BILINTANG_VERIFY_HPP
