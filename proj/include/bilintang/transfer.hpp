// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_TRANSFER_HPP
#define BILINTANG_TRANSFER_HPP

#include <vector>

#include "bilintang/structures.hpp"

namespace bilintang {

/// Ordered interpolation points s_1, ..., s_k.
struct FrequencyTuple {
  std::vector<Complex> points;

  Eigen::Index level() const {
    return static_cast<Eigen::Index>(points.size());
  }
};

/// Scaling vectors d^(1), ..., d^(k-1), each of length m. Empty for k = 1.
struct ScalingSequence {
  std::vector<Eigen::VectorXcd> vectors;
};

/// Per-call cache of LU factorizations of K(s) at distinct points. Solves
/// throw SingularMatrixError naming the offending point.
class KSolver {
public:
  explicit KSolver(const StructuredBilinearSystem &sys) : sys_(sys) {}

  Eigen::MatrixXcd solve(Complex s, const Eigen::MatrixXcd &rhs) const;
  Eigen::MatrixXcd solveAdjoint(Complex s, const Eigen::MatrixXcd &rhs) const;

  /// D^order(K^-1)(s) applied to rhs, via the inverse-derivative recurrence.
  Eigen::MatrixXcd solveDerivative(Complex s, int order,
                                   const Eigen::MatrixXcd &rhs) const;
  /// (D^order(K^-1)(s))^H applied to rhs.
  Eigen::MatrixXcd solveDerivativeAdjoint(Complex s, int order,
                                          const Eigen::MatrixXcd &rhs) const;

  const StructuredBilinearSystem &system() const { return sys_; }

private:
  const Eigen::PartialPivLU<Eigen::MatrixXcd> &factorization(Complex s) const;

  const StructuredBilinearSystem &sys_;
  mutable std::vector<std::pair<Complex, Eigen::PartialPivLU<Eigen::MatrixXcd>>>
      cache_;
};

/// Regular subsystem transfer function G_k(s_1, ..., s_k), a p x m^k matrix.
/// Columns follow the block convention where the bilinear index applied at
/// s_1 varies fastest (after the input column index).
Eigen::MatrixXcd evalRegular(const StructuredBilinearSystem &sys,
                             const FrequencyTuple &freqs);

/// Scaled sum of the bilinear terms, sum_i d_i N_i(s).
Eigen::MatrixXcd evalScaledN(const StructuredBilinearSystem &sys, Complex s,
                             const Eigen::VectorXcd &d);

/// Modified transfer function with scaling vectors, a p x m matrix. For
/// k = 1 identical to evalRegular.
Eigen::MatrixXcd evalModified(const StructuredBilinearSystem &sys,
                              const FrequencyTuple &freqs,
                              const ScalingSequence &scalings);

/// Blockwise evaluation G_k(s_1, ..., s_k) (I_{m^(k-1)} kron b) without
/// forming G_k, a p x m^(k-1) matrix.
Eigen::MatrixXcd evalBlockwise(const StructuredBilinearSystem &sys,
                               const FrequencyTuple &freqs,
                               const Eigen::VectorXcd &b);

/// Mixed partial derivative of evalModified with per-variable orders
/// (j_1, ..., j_k). Total order capped at 8.
Eigen::MatrixXcd evalModifiedDerivative(const StructuredBilinearSystem &sys,
                                        const FrequencyTuple &freqs,
                                        const ScalingSequence &scalings,
                                        const std::vector<int> &orders);

/// Mixed partial derivative of evalBlockwise with per-variable orders.
Eigen::MatrixXcd evalBlockwiseDerivative(const StructuredBilinearSystem &sys,
                                         const FrequencyTuple &freqs,
                                         const Eigen::VectorXcd &b,
                                         const std::vector<int> &orders);

/// Partial derivative of evalModified with respect to entry i (0-based) of
/// scaling vector j (0-based): the j-th scaled bilinear factor is replaced
/// by N_i, all other factors unchanged.
Eigen::MatrixXcd
evalModifiedScalingGradient(const StructuredBilinearSystem &sys,
                            const FrequencyTuple &freqs,
                            const ScalingSequence &scalings, Eigen::Index j,
                            Eigen::Index i);

} // namespace bilintang

#endif // BILINTANG_TRANSFER_HPP
