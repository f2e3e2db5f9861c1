// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_RECIPES_HPP
#define BILINTANG_RECIPES_HPP

#include <cstdint>
#include <random>

#include "bilintang/subspaces.hpp"

namespace bilintang {

/// Experiment-style reduction recipe: interpolation points i*logspace(a, b,
/// count) on the imaginary axis (conjugate pairs realized through
/// realification), one point set of level k per frequency, and seeded
/// normalized random tangential directions with entries uniform on [0, 1].
struct RecipeOptions {
  Framework framework = Framework::SttInt;
  ProjectionSide side = ProjectionSide::TwoSided;
  double a = -4.0;
  double b = 4.0;
  int count = 6;
  int level = 2;
  int hermite_order = 0;       // applied to every point (ell = nu)
  bool identical_points = false;
  bool realify = true;
  /// Basis rank-truncation tolerance; zero keeps every nonzero direction.
  double truncation_tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Deterministic uniform doubles on [0, 1) from a seeded mt19937_64; the
/// basis of every "random" vector in the toolkit, so runs are reproducible
/// across platforms.
class UniformSource {
public:
  explicit UniformSource(std::uint64_t seed) : gen_(seed) {}
  double next() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  Eigen::VectorXcd normalizedVector(Eigen::Index size);

private:
  std::mt19937_64 gen_;
};

InterpolationSpec makeRecipeSpec(Eigen::Index m, Eigen::Index p,
                                 const RecipeOptions &options);

} // namespace bilintang

#endif // BILINTANG_RECIPES_HPP
