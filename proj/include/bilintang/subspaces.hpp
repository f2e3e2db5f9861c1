// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_SUBSPACES_HPP
#define BILINTANG_SUBSPACES_HPP

#include <string>
#include <vector>

#include "bilintang/transfer.hpp"

namespace bilintang {

/// Interpolation framework selecting how scaling vectors are chosen.
///   Modified — user-supplied scaling vectors (the general framework)
///   SftInt   — all-ones scalings (frequency-motivated variant)
///   SttInt   — scalings equal to the right direction b (time-motivated)
///   BwtInt   — blockwise tangential interpolation
///   MtxInt   — full matrix interpolation (no tangential directions)
enum class Framework { Modified, SftInt, SttInt, BwtInt, MtxInt };

std::string frameworkName(Framework fw);
Framework frameworkFromName(const std::string &name);

enum class ProjectionSide { TwoSided, OneSidedV, OneSidedW };

/// One set of interpolation data: right points sigma_1..sigma_k, left points
/// varsigma_1..varsigma_kappa, tangential directions, scaling vectors, and
/// derivative orders for the Hermite variants.
struct PointSet {
  std::vector<Complex> sigma;
  std::vector<Complex> varsigma;
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;
  std::vector<Eigen::VectorXcd> d;     // size k-1 (Modified framework)
  std::vector<Eigen::VectorXcd> delta; // size kappa-1
  std::vector<int> ell; // derivative orders, size k (all zero: non-Hermite)
  std::vector<int> nu;  // derivative orders, size kappa

  Eigen::Index k() const { return static_cast<Eigen::Index>(sigma.size()); }
  Eigen::Index kappa() const {
    return static_cast<Eigen::Index>(varsigma.size());
  }
  bool hermite() const;
};

struct InterpolationSpec {
  Framework framework = Framework::Modified;
  ProjectionSide side = ProjectionSide::TwoSided;
  std::vector<PointSet> sets;
  /// Identical-point two-sided mode (sigma = varsigma, ell = nu, d = delta).
  bool identical_points = false;
  /// Append real and imaginary parts of every generated direction instead of
  /// the complex columns; used with conjugate-pair point recipes on real
  /// systems.
  bool realify = false;
  /// Rank-truncation tolerance relative to the (normalized) largest column
  /// norm. Zero keeps every nonzero direction, matching constructions that
  /// fix the reduced size a priori instead of compressing the basis.
  double truncation_tol = 1e-10;

  /// Resolves the effective scaling vectors for one set on the right
  /// (use_delta = false) or left (use_delta = true) side.
  std::vector<Eigen::VectorXcd> scalingsFor(const PointSet &set,
                                            bool use_delta) const;
  void validate(Eigen::Index m, Eigen::Index p) const;
};

/// Where a retained basis column came from.
struct ConditionDescriptor {
  int set = 0;
  int level = 0;              // transfer function level of the condition
  std::vector<int> orders;    // derivative orders along the chain
  int block = 0;              // column within a blockwise/matrix level
  char side = 'V';
  int raw_index = 0;          // index into the raw (pre-realification) columns
};

struct ReductionBases {
  Eigen::MatrixXcd V;
  Eigen::MatrixXcd W;
  std::vector<ConditionDescriptor> provenance_V;
  std::vector<ConditionDescriptor> provenance_W;
  /// Raw direction counts before realification and orthogonalization; these
  /// match the closed-form dimension counts.
  Eigen::Index raw_width_V = 0;
  Eigen::Index raw_width_W = 0;
  bool real_valued = false;

  Eigen::Index order() const { return V.cols(); }
};

/// Raw columns of one side of one point set, prior to orthogonalization.
struct RawBlock {
  Eigen::MatrixXcd columns;
  std::vector<ConditionDescriptor> provenance;
};

// Chain constructions. Non-Hermite chains are the all-orders-zero case of
// the Hermite ones; both are exposed since tests pin them separately.

std::vector<Eigen::VectorXcd>
buildVModified(const StructuredBilinearSystem &sys, const PointSet &set,
               const std::vector<Eigen::VectorXcd> &scalings);
std::vector<Eigen::VectorXcd>
buildWModified(const StructuredBilinearSystem &sys, const PointSet &set,
               const std::vector<Eigen::VectorXcd> &scalings);

RawBlock buildVModifiedHermite(const StructuredBilinearSystem &sys,
                               const PointSet &set,
                               const std::vector<Eigen::VectorXcd> &scalings);
RawBlock buildWModifiedHermite(const StructuredBilinearSystem &sys,
                               const PointSet &set,
                               const std::vector<Eigen::VectorXcd> &scalings);

RawBlock buildVBlockwise(const StructuredBilinearSystem &sys,
                         const PointSet &set);
RawBlock buildWBlockwise(const StructuredBilinearSystem &sys,
                         const PointSet &set);

RawBlock buildVMatrix(const StructuredBilinearSystem &sys,
                      const PointSet &set);
RawBlock buildWMatrix(const StructuredBilinearSystem &sys,
                      const PointSet &set);

/// Builds, realifies, orthogonalizes (modified Gram-Schmidt with one
/// reorthogonalization pass, rank truncation at 1e-10 times the largest
/// column norm) and pairs the bases per the spec.
ReductionBases assembleBases(const StructuredBilinearSystem &sys,
                             const InterpolationSpec &spec);

/// Closed-form pre-truncation widths per point set for the given framework.
Eigen::Index rawWidthPerSetV(Framework fw, Eigen::Index k, Eigen::Index m);
Eigen::Index rawWidthPerSetW(Framework fw, Eigen::Index kappa, Eigen::Index m,
                             Eigen::Index p);

} // namespace bilintang

#endif // BILINTANG_SUBSPACES_HPP
