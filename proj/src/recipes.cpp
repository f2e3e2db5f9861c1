// SPDX-License-Identifier: Apache-2.0
#include "bilintang/recipes.hpp"

#include <cmath>

namespace bilintang {

Eigen::VectorXcd UniformSource::normalizedVector(Eigen::Index size) {
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    v(i) = Complex(next(), 0.0);
  }
  const double norm = v.norm();
  if (norm > 0.0) {
    v /= norm;
  } else {
    v(0) = Complex(1.0, 0.0);
  }
  return v;
}

InterpolationSpec makeRecipeSpec(Eigen::Index m, Eigen::Index p,
                                 const RecipeOptions &options) {
  if (options.count < 1 || options.level < 1) {
    throw std::invalid_argument("recipe needs count >= 1 and level >= 1");
  }
  if (options.a > options.b) {
    throw std::invalid_argument("recipe interval endpoints must satisfy a <= b");
  }
  InterpolationSpec spec;
  spec.framework = options.framework;
  spec.side = options.side;
  spec.identical_points = options.identical_points;
  spec.realify = options.realify;
  spec.truncation_tol = options.truncation_tol;

  UniformSource rng(options.seed);
  const int k = options.level;
  for (int t = 0; t < options.count; ++t) {
    const double e =
        options.count == 1
            ? options.a
            : options.a + (options.b - options.a) * static_cast<double>(t) /
                              static_cast<double>(options.count - 1);
    const Complex point(0.0, std::pow(10.0, e));

    PointSet set;
    set.sigma.assign(static_cast<size_t>(k), point);
    set.varsigma.assign(static_cast<size_t>(k), point);
    set.b = rng.normalizedVector(m);
    set.c = rng.normalizedVector(p);
    if (options.framework == Framework::Modified) {
      for (int j = 0; j + 1 < k; ++j) {
        set.d.push_back(rng.normalizedVector(m));
      }
      set.delta = spec.identical_points ? set.d : [&] {
        std::vector<Eigen::VectorXcd> out;
        for (int j = 0; j + 1 < k; ++j) {
          out.push_back(rng.normalizedVector(m));
        }
        return out;
      }();
    }
    if (options.hermite_order > 0) {
      set.ell.assign(static_cast<size_t>(k), options.hermite_order);
      set.nu.assign(static_cast<size_t>(k), options.hermite_order);
    }
    spec.sets.push_back(std::move(set));
  }
  spec.validate(m, p);
  return spec;
}

} // namespace bilintang
