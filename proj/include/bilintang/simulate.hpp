// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_SIMULATE_HPP
#define BILINTANG_SIMULATE_HPP

#include <functional>
#include <string>

#include "bilintang/structures.hpp"

namespace bilintang {

/// Time-domain input signal u(t), a real vector of length m on [0, t_f].
struct InputSignal {
  std::function<Eigen::VectorXd(double)> u;
  std::string description;
};

/// Named input signals: "zero", "step", "msd_bench" (m = 2),
/// "rod_bench" (m = 5). Throws std::invalid_argument for unknown names or
/// mismatched m.
InputSignal signalByName(const std::string &name, Eigen::Index m);

struct Trajectory {
  std::vector<double> times;
  Eigen::MatrixXd outputs; // #times x p

  Eigen::Index samples() const {
    return static_cast<Eigen::Index>(times.size());
  }
};

/// IMEX one-step scheme for first-order systems, implicit in the linear part
/// and explicit in the bilinear part:
///   (E - dt A) x_{q+1} = E x_q + dt (sum_j N_j x_q u_j(t_{q+1}) + B u(t_{q+1}))
/// with x_0 = 0 and y_q = C x_q.
Trajectory simulateFirstOrder(const StructuredBilinearSystem &sys,
                              const InputSignal &input, double t_f, double dt);

/// Second-order systems via the companion embedding [q; qdot]; output
/// Cp q + Cv qdot.
Trajectory simulateSecondOrder(const StructuredBilinearSystem &sys,
                               const InputSignal &input, double t_f, double dt);

/// Time-delay systems by the method of steps: the delayed state is read from
/// the stored history (zero on [-tau, 0]) with linear interpolation; dt is
/// snapped to divide tau.
Trajectory simulateDelay(const StructuredBilinearSystem &sys,
                         const InputSignal &input, double t_f, double dt);

/// Dispatches on the system's template tag.
Trajectory simulate(const StructuredBilinearSystem &sys,
                    const InputSignal &input, double t_f, double dt);

/// CSV with header `t,y1,...,yp`.
void writeTrajectoryCsv(const std::string &path, const Trajectory &traj);

} // namespace bilintang

#endif // BILINTANG_SIMULATE_HPP
