// SPDX-License-Identifier: Apache-2.0
#include "bilintang/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace bilintang {

namespace {

constexpr double kIllConditionedThreshold = 1e12;
constexpr int kMaxTotalOrder = 8;

int totalOrder(const std::vector<int> &orders) {
  int total = 0;
  for (int o : orders) {
    total += o;
  }
  return total;
}

/// Per-call cache of cond_2(hK(s)) over the condition points.
class ConditionContext {
public:
  ConditionContext(const StructuredBilinearSystem &rom, double tol)
      : rom_(rom), tol_(tol) {}

  bool illConditionedAt(const std::vector<Complex> &points) {
    for (Complex s : points) {
      const auto key = std::make_pair(s.real(), s.imag());
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rom_.K().eval(s));
        const double smin = svd.singularValues().minCoeff();
        const double cond = smin > 0.0
                                ? svd.singularValues().maxCoeff() / smin
                                : std::numeric_limits<double>::infinity();
        it = cache_.emplace(key, cond).first;
      }
      if (it->second > kIllConditionedThreshold) {
        return true;
      }
    }
    return false;
  }

  ConditionReport report(std::string id, const Eigen::MatrixXcd &lhs,
                         const Eigen::MatrixXcd &rhs,
                         const std::vector<Complex> &points) {
    ConditionReport rep;
    rep.id = std::move(id);
    rep.lhs_norm = lhs.norm();
    rep.abs_residual = (lhs - rhs).norm();
    rep.rel_residual = rep.abs_residual / std::max(rep.lhs_norm, 1e-300);
    rep.pass = rep.rel_residual <= tol_;
    if (!rep.pass) {
      rep.ill_conditioned = illConditionedAt(points);
    }
    return rep;
  }

private:
  const StructuredBilinearSystem &rom_;
  double tol_;
  std::map<std::pair<double, double>, double> cache_;
};

std::string ordersTag(const std::vector<int> &orders) {
  std::string out;
  for (size_t i = 0; i < orders.size(); ++i) {
    out += (i ? "," : "") + std::to_string(orders[i]);
  }
  return out;
}

std::vector<Complex> subPoints(const std::vector<Complex> &points, size_t lo,
                               size_t count) {
  return {points.begin() + static_cast<std::ptrdiff_t>(lo),
          points.begin() + static_cast<std::ptrdiff_t>(lo + count)};
}

std::vector<Eigen::VectorXcd> subScalings(const std::vector<Eigen::VectorXcd> &v,
                                          size_t lo, size_t count) {
  return {v.begin() + static_cast<std::ptrdiff_t>(lo),
          v.begin() + static_cast<std::ptrdiff_t>(lo + count)};
}

std::vector<int> effOrders(const std::vector<int> &orders, size_t count) {
  if (orders.empty()) {
    return std::vector<int>(count, 0);
  }
  return orders;
}

/// Deterministic middle scalings for the Part-(c) mixed conditions: a few
/// seeded random vectors, the zero vector, and the unit vectors.
std::vector<Eigen::VectorXcd> middleScalings(Eigen::Index m, int set_index,
                                             int q, int eta, bool compact) {
  std::vector<Eigen::VectorXcd> out;
  std::mt19937_64 gen(0x5bd1e995u + 1000003u * static_cast<unsigned>(set_index) +
                      101u * static_cast<unsigned>(q) +
                      static_cast<unsigned>(eta));
  auto uniform = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  const int randoms = compact ? 1 : 3;
  for (int r = 0; r < randoms; ++r) {
    Eigen::VectorXcd z(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      z(i) = Complex(uniform(), 0.0);
    }
    out.push_back(z);
  }
  if (!compact) {
    out.push_back(Eigen::VectorXcd::Zero(m));
  }
  const Eigen::Index units = compact ? 1 : m;
  for (Eigen::Index i = 0; i < units; ++i) {
    out.push_back(Eigen::VectorXcd::Unit(m, i));
  }
  return out;
}

/// Full G_k mixed partial derivative assembled from modified transfer
/// functions with unit-vector scalings (the index applied at s_1 varies
/// fastest across the m-column blocks).
Eigen::MatrixXcd regularDerivativeAssembled(const StructuredBilinearSystem &sys,
                                            const FrequencyTuple &freqs,
                                            const std::vector<int> &orders) {
  const Eigen::Index m = sys.m();
  const auto k = static_cast<size_t>(freqs.level());
  Eigen::Index blocks = 1;
  for (size_t t = 1; t < k; ++t) {
    blocks *= m;
  }
  Eigen::MatrixXcd out(sys.p(), blocks * m);
  for (Eigen::Index blk = 0; blk < blocks; ++blk) {
    ScalingSequence sc;
    Eigen::Index rest = blk;
    for (size_t t = 1; t < k; ++t) {
      sc.vectors.push_back(Eigen::VectorXcd::Unit(m, rest % m));
      rest /= m;
    }
    out.middleCols(blk * m, m) = evalModifiedDerivative(sys, freqs, sc, orders);
  }
  return out;
}

/// c^H G_k (I otimes b) mixed partial derivative as a row over the
/// unit-scaling combinations.
Eigen::MatrixXcd mixedRowAssembled(const StructuredBilinearSystem &sys,
                                   const FrequencyTuple &freqs,
                                   const std::vector<int> &orders,
                                   const Eigen::VectorXcd &c,
                                   const Eigen::VectorXcd &b) {
  const Eigen::Index m = sys.m();
  const auto k = static_cast<size_t>(freqs.level());
  Eigen::Index blocks = 1;
  for (size_t t = 1; t < k; ++t) {
    blocks *= m;
  }
  Eigen::MatrixXcd out(1, blocks);
  for (Eigen::Index blk = 0; blk < blocks; ++blk) {
    ScalingSequence sc;
    Eigen::Index rest = blk;
    for (size_t t = 1; t < k; ++t) {
      sc.vectors.push_back(Eigen::VectorXcd::Unit(m, rest % m));
      rest /= m;
    }
    out(0, blk) =
        (c.adjoint() * evalModifiedDerivative(sys, freqs, sc, orders) * b)(0);
  }
  return out;
}

std::vector<ConditionReport> checkModifiedFamily(
    const StructuredBilinearSystem &sys, const ReducedModel &rom,
    const InterpolationSpec &spec, double tol, bool use_orders) {
  std::vector<ConditionReport> reports;
  ConditionContext ctx(rom.system, tol);
  const bool needV = spec.side != ProjectionSide::OneSidedW;
  const bool needW = spec.side != ProjectionSide::OneSidedV;
  const bool two_sided = spec.side == ProjectionSide::TwoSided;

  for (size_t si = 0; si < spec.sets.size(); ++si) {
    const PointSet &set = spec.sets[si];
    const auto k = static_cast<size_t>(set.k());
    const auto kappa = static_cast<size_t>(set.kappa());
    const std::vector<int> ell =
        use_orders ? effOrders(set.ell, k) : std::vector<int>(k, 0);
    const std::vector<int> nu =
        use_orders ? effOrders(set.nu, kappa) : std::vector<int>(kappa, 0);
    const std::vector<Eigen::VectorXcd> d = spec.scalingsFor(set, false);
    const std::vector<Eigen::VectorXcd> delta = spec.scalingsFor(set, true);
    const bool hermite = totalOrder(ell) + totalOrder(nu) > 0;
    const std::string tag = "set" + std::to_string(si);

    auto both = [&](const FrequencyTuple &freqs, const ScalingSequence &sc,
                    const std::vector<int> &orders) {
      return std::make_pair(evalModifiedDerivative(sys, freqs, sc, orders),
                            evalModifiedDerivative(rom.system, freqs, sc,
                                                   orders));
    };

    if (needV) {
      for (size_t t = 1; t <= k; ++t) {
        for (int j = 0; j <= ell[t - 1]; ++j) {
          FrequencyTuple freqs{subPoints(set.sigma, 0, t)};
          ScalingSequence sc{subScalings(d, 0, t - 1)};
          std::vector<int> orders(ell.begin(), ell.begin() + (t - 1));
          orders.push_back(j);
          if (totalOrder(orders) > kMaxTotalOrder) {
            continue;
          }
          auto [lhs, rhs] = both(freqs, sc, orders);
          reports.push_back(ctx.report(tag + "/right/k" + std::to_string(t) +
                                           "/orders(" + ordersTag(orders) + ")",
                                       lhs * set.b, rhs * set.b, freqs.points));
        }
      }
    }
    if (needW) {
      for (size_t eta = 1; eta <= kappa; ++eta) {
        for (int i = 0; i <= nu[kappa - eta]; ++i) {
          FrequencyTuple freqs{subPoints(set.varsigma, kappa - eta, eta)};
          ScalingSequence sc{subScalings(delta, kappa - eta, eta - 1)};
          std::vector<int> orders{i};
          for (size_t t = kappa - eta + 1; t < kappa; ++t) {
            orders.push_back(nu[t]);
          }
          if (totalOrder(orders) > kMaxTotalOrder) {
            continue;
          }
          auto [lhs, rhs] = both(freqs, sc, orders);
          reports.push_back(ctx.report(
              tag + "/left/k" + std::to_string(eta) + "/orders(" +
                  ordersTag(orders) + ")",
              set.c.adjoint() * lhs, set.c.adjoint() * rhs, freqs.points));
        }
      }
    }
    if (two_sided) {
      for (size_t q = 1; q <= k; ++q) {
        for (size_t eta = 1; eta <= kappa; ++eta) {
          FrequencyTuple freqs{subPoints(set.sigma, 0, q)};
          for (size_t t = kappa - eta; t < kappa; ++t) {
            freqs.points.push_back(set.varsigma[t]);
          }
          const std::vector<Eigen::VectorXcd> zs = middleScalings(
              sys.m(), static_cast<int>(si), static_cast<int>(q),
              static_cast<int>(eta), hermite);
          for (size_t zi = 0; zi < zs.size(); ++zi) {
            ScalingSequence sc{subScalings(d, 0, q - 1)};
            sc.vectors.push_back(zs[zi]);
            for (size_t t = kappa - eta; t + 1 < kappa; ++t) {
              sc.vectors.push_back(delta[t]);
            }
            for (int jq = 0; jq <= ell[q - 1]; ++jq) {
              for (int i = 0; i <= nu[kappa - eta]; ++i) {
                std::vector<int> orders(ell.begin(), ell.begin() + (q - 1));
                orders.push_back(jq);
                orders.push_back(i);
                for (size_t t = kappa - eta + 1; t < kappa; ++t) {
                  orders.push_back(nu[t]);
                }
                if (totalOrder(orders) > kMaxTotalOrder) {
                  continue;
                }
                auto [lhs, rhs] = both(freqs, sc, orders);
                reports.push_back(ctx.report(
                    tag + "/mixed/q" + std::to_string(q) + "eta" +
                        std::to_string(eta) + "/z" + std::to_string(zi) +
                        "/orders(" + ordersTag(orders) + ")",
                    set.c.adjoint() * lhs * set.b,
                    set.c.adjoint() * rhs * set.b, freqs.points));
              }
            }
          }
        }
      }
    }
    if (two_sided && spec.identical_points && k >= 1) {
      // Jacobian conditions at the identical point set: one frequency
      // partial per variable and one partial per scaling-vector entry
      // (realized by replacing that scaling with a unit vector, using the
      // linearity of the modified transfer function in each scaling).
      FrequencyTuple freqs{set.sigma};
      ScalingSequence sc{d};
      for (size_t t = 1; t <= k; ++t) {
        std::vector<int> orders = ell;
        orders[t - 1] += 1;
        if (totalOrder(orders) > kMaxTotalOrder) {
          continue;
        }
        auto [lhs, rhs] = both(freqs, sc, orders);
        reports.push_back(ctx.report(
            tag + "/grad/s" + std::to_string(t),
            set.c.adjoint() * lhs * set.b, set.c.adjoint() * rhs * set.b,
            freqs.points));
      }
      for (size_t j = 1; j < k; ++j) {
        for (Eigen::Index i = 0; i < sys.m(); ++i) {
          ScalingSequence scg{d};
          scg.vectors[j - 1] = Eigen::VectorXcd::Unit(sys.m(), i);
          if (totalOrder(ell) > kMaxTotalOrder) {
            continue;
          }
          auto [lhs, rhs] = both(freqs, scg, ell);
          reports.push_back(ctx.report(
              tag + "/grad/d" + std::to_string(j) + "_" + std::to_string(i + 1),
              set.c.adjoint() * lhs * set.b, set.c.adjoint() * rhs * set.b,
              freqs.points));
        }
      }
    }
  }
  return reports;
}

} // namespace

std::vector<ConditionReport> checkTangential(const StructuredBilinearSystem &sys,
                                             const ReducedModel &rom,
                                             const InterpolationSpec &spec,
                                             double tol) {
  return checkModifiedFamily(sys, rom, spec, tol, false);
}

std::vector<ConditionReport> checkHermite(const StructuredBilinearSystem &sys,
                                          const ReducedModel &rom,
                                          const InterpolationSpec &spec,
                                          double tol) {
  return checkModifiedFamily(sys, rom, spec, tol, true);
}

std::vector<ConditionReport> checkBlockwise(const StructuredBilinearSystem &sys,
                                            const ReducedModel &rom,
                                            const InterpolationSpec &spec,
                                            double tol) {
  if (spec.framework != Framework::BwtInt &&
      spec.framework != Framework::MtxInt) {
    throw std::invalid_argument(
        "checkBlockwise requires the BwtInt or MtxInt framework");
  }
  const bool matrix = spec.framework == Framework::MtxInt;
  std::vector<ConditionReport> reports;
  ConditionContext ctx(rom.system, tol);
  const bool needV = spec.side != ProjectionSide::OneSidedW;
  const bool needW = spec.side != ProjectionSide::OneSidedV;
  const bool two_sided = spec.side == ProjectionSide::TwoSided;

  for (size_t si = 0; si < spec.sets.size(); ++si) {
    const PointSet &set = spec.sets[si];
    const auto k = static_cast<size_t>(set.k());
    const auto kappa = static_cast<size_t>(set.kappa());
    const std::vector<int> ell = effOrders(set.ell, k);
    const std::vector<int> nu = effOrders(set.nu, kappa);
    const std::string tag = "set" + std::to_string(si);

    if (needV) {
      for (size_t t = 1; t <= k; ++t) {
        for (int j = 0; j <= ell[t - 1]; ++j) {
          FrequencyTuple freqs{subPoints(set.sigma, 0, t)};
          std::vector<int> orders(ell.begin(), ell.begin() + (t - 1));
          orders.push_back(j);
          if (totalOrder(orders) > kMaxTotalOrder) {
            continue;
          }
          Eigen::MatrixXcd lhs, rhs;
          if (matrix) {
            lhs = regularDerivativeAssembled(sys, freqs, orders);
            rhs = regularDerivativeAssembled(rom.system, freqs, orders);
          } else {
            lhs = evalBlockwiseDerivative(sys, freqs, set.b, orders);
            rhs = evalBlockwiseDerivative(rom.system, freqs, set.b, orders);
          }
          reports.push_back(ctx.report(tag + "/right/k" + std::to_string(t) +
                                           "/orders(" + ordersTag(orders) + ")",
                                       lhs, rhs, freqs.points));
        }
      }
    }
    if (needW) {
      for (size_t eta = 1; eta <= kappa; ++eta) {
        for (int i = 0; i <= nu[kappa - eta]; ++i) {
          FrequencyTuple freqs{subPoints(set.varsigma, kappa - eta, eta)};
          std::vector<int> orders{i};
          for (size_t t = kappa - eta + 1; t < kappa; ++t) {
            orders.push_back(nu[t]);
          }
          if (totalOrder(orders) > kMaxTotalOrder) {
            continue;
          }
          Eigen::MatrixXcd lhs = regularDerivativeAssembled(sys, freqs, orders);
          Eigen::MatrixXcd rhs =
              regularDerivativeAssembled(rom.system, freqs, orders);
          if (!matrix) {
            lhs = set.c.adjoint() * lhs;
            rhs = set.c.adjoint() * rhs;
          }
          reports.push_back(ctx.report(tag + "/left/k" + std::to_string(eta) +
                                           "/orders(" + ordersTag(orders) + ")",
                                       lhs, rhs, freqs.points));
        }
      }
    }
    if (two_sided) {
      for (size_t q = 1; q <= k; ++q) {
        for (size_t eta = 1; eta <= kappa; ++eta) {
          FrequencyTuple freqs{subPoints(set.sigma, 0, q)};
          for (size_t t = kappa - eta; t < kappa; ++t) {
            freqs.points.push_back(set.varsigma[t]);
          }
          for (int jq = 0; jq <= ell[q - 1]; ++jq) {
            for (int i = 0; i <= nu[kappa - eta]; ++i) {
              std::vector<int> orders(ell.begin(), ell.begin() + (q - 1));
              orders.push_back(jq);
              orders.push_back(i);
              for (size_t t = kappa - eta + 1; t < kappa; ++t) {
                orders.push_back(nu[t]);
              }
              if (totalOrder(orders) > kMaxTotalOrder) {
                continue;
              }
              Eigen::MatrixXcd lhs, rhs;
              if (matrix) {
                lhs = regularDerivativeAssembled(sys, freqs, orders);
                rhs = regularDerivativeAssembled(rom.system, freqs, orders);
              } else {
                lhs = mixedRowAssembled(sys, freqs, orders, set.c, set.b);
                rhs =
                    mixedRowAssembled(rom.system, freqs, orders, set.c, set.b);
              }
              reports.push_back(ctx.report(
                  tag + "/mixed/q" + std::to_string(q) + "eta" +
                      std::to_string(eta) + "/orders(" + ordersTag(orders) +
                      ")",
                  lhs, rhs, freqs.points));
            }
          }
        }
      }
      if (spec.identical_points) {
        FrequencyTuple freqs{set.sigma};
        for (size_t t = 1; t <= k; ++t) {
          std::vector<int> orders = ell;
          orders[t - 1] += 1;
          if (totalOrder(orders) > kMaxTotalOrder) {
            continue;
          }
          Eigen::MatrixXcd lhs, rhs;
          if (matrix) {
            lhs = regularDerivativeAssembled(sys, freqs, orders);
            rhs = regularDerivativeAssembled(rom.system, freqs, orders);
          } else {
            lhs = mixedRowAssembled(sys, freqs, orders, set.c, set.b);
            rhs = mixedRowAssembled(rom.system, freqs, orders, set.c, set.b);
          }
          reports.push_back(ctx.report(tag + "/grad/s" + std::to_string(t), lhs,
                                       rhs, freqs.points));
        }
      }
    }
  }
  return reports;
}

std::vector<ConditionReport> checkConditions(const StructuredBilinearSystem &sys,
                                             const ReducedModel &rom,
                                             const InterpolationSpec &spec,
                                             double tol) {
  if (spec.framework == Framework::BwtInt ||
      spec.framework == Framework::MtxInt) {
    return checkBlockwise(sys, rom, spec, tol);
  }
  return checkHermite(sys, rom, spec, tol);
}

bool allPass(const std::vector<ConditionReport> &reports) {
  for (const ConditionReport &rep : reports) {
    if (!rep.pass && !rep.ill_conditioned) {
      return false;
    }
  }
  return true;
}

double errSim(const Trajectory &full, const Trajectory &reduced) {
  if (full.samples() != reduced.samples()) {
    throw std::invalid_argument("trajectory grids do not match");
  }
  double worst = -1.0;
  for (Eigen::Index i = 0; i < full.samples(); ++i) {
    const double ref = full.outputs.row(i).norm();
    if (ref < 1e-14) {
      continue;
    }
    worst = std::max(worst,
                     (full.outputs.row(i) - reduced.outputs.row(i)).norm() / ref);
  }
  if (worst < 0.0) {
    throw std::runtime_error("reference output is identically zero");
  }
  return worst;
}

namespace {

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double e = n == 1 ? a : a + (b - a) * static_cast<double>(i) /
                                          static_cast<double>(n - 1);
    out.push_back(std::pow(10.0, e));
  }
  return out;
}

double spectralNorm(const Eigen::MatrixXcd &matrix) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(matrix)
      .singularValues()
      .maxCoeff();
}

} // namespace

std::vector<Eigen::MatrixXcd> sweepG1(const StructuredBilinearSystem &sys,
                                      double a, double b, int n) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<size_t>(n));
  for (double w : logspace(a, b, n)) {
    out.push_back(evalRegular(sys, FrequencyTuple{{Complex(0.0, w)}}));
  }
  return out;
}

double maxRelSpectralError(const std::vector<Eigen::MatrixXcd> &ref,
                           const std::vector<Eigen::MatrixXcd> &test) {
  if (ref.size() != test.size()) {
    throw std::invalid_argument("sweep sizes do not match");
  }
  double worst = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    worst = std::max(worst, spectralNorm(ref[i] - test[i]) /
                                std::max(spectralNorm(ref[i]), 1e-300));
  }
  return worst;
}

GridErrors gridErrors(const StructuredBilinearSystem &sys,
                      const StructuredBilinearSystem &red, double a1, double b1,
                      int n1, double a2, double b2, int n2) {
  GridErrors grid;
  grid.w1 = logspace(a1, b1, n1);
  grid.relerr1.reserve(grid.w1.size());
  for (double w : grid.w1) {
    const FrequencyTuple freqs{{Complex(0.0, w)}};
    const Eigen::MatrixXcd lhs = evalRegular(sys, freqs);
    const Eigen::MatrixXcd rhs = evalRegular(red, freqs);
    const double err =
        spectralNorm(lhs - rhs) / std::max(spectralNorm(lhs), 1e-300);
    grid.relerr1.push_back(err);
    grid.err_G1 = std::max(grid.err_G1, err);
  }
  if (n2 > 0) {
    grid.w2 = logspace(a2, b2, n2);
    grid.relerr2.resize(n2, n2);
    for (int i = 0; i < n2; ++i) {
      for (int j = 0; j < n2; ++j) {
        const FrequencyTuple freqs{
            {Complex(0.0, grid.w2[static_cast<size_t>(i)]),
             Complex(0.0, grid.w2[static_cast<size_t>(j)])}};
        const Eigen::MatrixXcd lhs = evalRegular(sys, freqs);
        const Eigen::MatrixXcd rhs = evalRegular(red, freqs);
        const double err =
            spectralNorm(lhs - rhs) / std::max(spectralNorm(lhs), 1e-300);
        grid.relerr2(i, j) = err;
        grid.err_G2 = std::max(grid.err_G2, err);
      }
    }
  }
  return grid;
}

void writeReportsJson(const std::string &path,
                      const std::vector<ConditionReport> &reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ConditionReport &rep : reports) {
    arr.push_back({{"id", rep.id},
                   {"lhs_norm", rep.lhs_norm},
                   {"abs_residual", rep.abs_residual},
                   {"rel_residual", rep.rel_residual},
                   {"pass", rep.pass},
                   {"ill_conditioned", rep.ill_conditioned}});
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << arr.dump(2) << '\n';
}

void printReportsTable(std::ostream &out,
                       const std::vector<ConditionReport> &reports) {
  char buf[64];
  for (const ConditionReport &rep : reports) {
    std::snprintf(buf, sizeof(buf), "%-10.3e",
                  rep.rel_residual);
    out << (rep.ill_conditioned ? "ILLCOND"
            : rep.pass          ? "PASS   "
                                : "FAIL   ")
        << ' ' << buf << ' ' << rep.id << '\n';
  }
}

void writeGridCsv(const std::string &path, const GridErrors &grid) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << "w1,w2,relerr\n";
  char buf[40];
  auto put = [&out, &buf](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << sep;
  };
  for (size_t i = 0; i < grid.w1.size(); ++i) {
    put(grid.w1[i], ',');
    put(0.0, ',');
    put(grid.relerr1[i], '\n');
  }
  for (Eigen::Index i = 0; i < grid.relerr2.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.relerr2.cols(); ++j) {
      put(grid.w2[static_cast<size_t>(i)], ',');
      put(grid.w2[static_cast<size_t>(j)], ',');
      put(grid.relerr2(i, j), '\n');
    }
  }
}

} // namespace bilintang
