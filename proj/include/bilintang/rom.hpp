// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_ROM_HPP
#define BILINTANG_ROM_HPP

#include "bilintang/subspaces.hpp"

namespace bilintang {

/// Reduced-order model produced by Petrov-Galerkin projection. The reduced
/// system shares the full model's template tag and scalar bases; the bases
/// are retained for condition verification.
struct ReducedModel {
  StructuredBilinearSystem system;
  ReductionBases bases;
  Eigen::Index parent_n = 0;
  Eigen::Index parent_m = 0;
  Eigen::Index parent_p = 0;

  Eigen::Index r() const { return system.n(); }
};

/// Projects every coefficient matrix: K and N_j coefficients map to W^H X V,
/// B coefficients to W^H X, C coefficients to X V. Scalar bases untouched,
/// so the reduced matrix functions satisfy hK(s) = W^H K(s) V identically.
ReducedModel project(const StructuredBilinearSystem &sys,
                     const ReductionBases &bases);

} // namespace bilintang

#endif // BILINTANG_ROM_HPP
