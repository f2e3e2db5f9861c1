// SPDX-License-Identifier: Apache-2.0
#ifndef BILINTANG_BENCH_HPP
#define BILINTANG_BENCH_HPP

#include "bilintang/structures.hpp"

namespace bilintang {

/// Damped mass-spring chain (second_order template): M = I,
/// K = tridiag(-2, 4, -2), D = 0.02 M + 0.1 K, Bu = [e_1, -e_n],
/// Cp = [e_2, e_5]^T, Np1 = -S1 K S1 with S1 = diag(linspace(0.2, 0, n)),
/// Np2 = S2 K S2 with S2 = diag(linspace(0, 0.2, n)); Nv = 0, Cv = 0.
/// Always m = p = 2; requires n >= 6.
StructuredBilinearSystem makeMsd(Eigen::Index n);

/// Heated rod with delayed feedback (time_delay template): centered
/// differences on (0, pi) with zero Dirichlet boundaries,
/// A = Lap_h - 2 diag(sin zeta), Ad = 2 diag(sin zeta), B spreads each input
/// uniformly over an equal contiguous section, C averages the state over
/// each of p equal sections, N_k = -diag(section-k indicator). Requires n
/// divisible by m and by p.
StructuredBilinearSystem makeDelayRod(Eigen::Index n, Eigen::Index m,
                                      Eigen::Index p, double tau);

/// 2D heat equation analog (first_order template): 5-point Laplacian on an
/// nx-by-ny grid, boundary split into 7 segments; segments 1-6 contribute a
/// B column plus N_i = -q_i diag(segment indicator), segment 7 a pure B
/// column folded into A; C reads 6 interior probes. m = 7, p = 6, E = I.
StructuredBilinearSystem makeHeat2d(Eigen::Index nx, Eigen::Index ny);

} // namespace bilintang

#endif // BILINTANG_BENCH_HPP
