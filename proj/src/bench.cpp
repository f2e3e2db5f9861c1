// SPDX-License-Identifier: Apache-2.0
#include "bilintang/bench.hpp"

#include <cmath>

namespace bilintang {

namespace {

Eigen::VectorXd linspaceVec(double lo, double hi, Eigen::Index n) {
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

} // namespace

StructuredBilinearSystem makeMsd(Eigen::Index n) {
  if (n < 6) {
    throw std::invalid_argument("msd requires n >= 6 (output indices)");
  }
  const Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = 4.0;
    if (i > 0) {
      K(i, i - 1) = -2.0;
      K(i - 1, i) = -2.0;
    }
  }
  const Eigen::MatrixXd D = 0.02 * M + 0.1 * K;

  Eigen::MatrixXd Bu = Eigen::MatrixXd::Zero(n, 2);
  Bu(0, 0) = 1.0;
  Bu(n - 1, 1) = -1.0;
  Eigen::MatrixXd Cp = Eigen::MatrixXd::Zero(2, n);
  Cp(0, 1) = 1.0;
  Cp(1, 4) = 1.0;
  const Eigen::MatrixXd Cv = Eigen::MatrixXd::Zero(2, n);

  const Eigen::VectorXd s1 = linspaceVec(0.2, 0.0, n);
  const Eigen::VectorXd s2 = linspaceVec(0.0, 0.2, n);
  const Eigen::MatrixXd Np1 =
      -(s1.asDiagonal() * K * s1.asDiagonal()).eval();
  const Eigen::MatrixXd Np2 = (s2.asDiagonal() * K * s2.asDiagonal()).eval();
  const Eigen::MatrixXd Zn = Eigen::MatrixXd::Zero(n, n);

  return makeSecondOrder(M, D, K, {Np1, Np2}, {Zn, Zn}, Bu, Cp, Cv);
}

StructuredBilinearSystem makeDelayRod(Eigen::Index n, Eigen::Index m,
                                      Eigen::Index p, double tau) {
  if (n % m != 0 || n % p != 0) {
    throw std::invalid_argument("delay_rod requires n divisible by m and p");
  }
  const double pi = std::acos(-1.0);
  const double h = pi / static_cast<double>(n + 1);
  const double ih2 = 1.0 / (h * h);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Ad = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double zeta = static_cast<double>(i + 1) * h;
    A(i, i) = -2.0 * ih2 - 2.0 * std::sin(zeta);
    if (i > 0) {
      A(i, i - 1) = ih2;
      A(i - 1, i) = ih2;
    }
    Ad(i, i) = 2.0 * std::sin(zeta);
  }

  const Eigen::Index in_sec = n / m;
  const Eigen::Index out_sec = n / p;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
  std::vector<Eigen::MatrixXd> N;
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::MatrixXd Nk = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = k * in_sec; i < (k + 1) * in_sec; ++i) {
      B(i, k) = 1.0;
      Nk(i, i) = -1.0;
    }
    N.push_back(std::move(Nk));
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(p, n);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = j * out_sec; i < (j + 1) * out_sec; ++i) {
      C(j, i) = 1.0 / static_cast<double>(out_sec);
    }
  }
  return makeTimeDelay(A, Ad, N, B, C, tau);
}

StructuredBilinearSystem makeHeat2d(Eigen::Index nx, Eigen::Index ny) {
  if (nx < 4 || ny < 4) {
    throw std::invalid_argument("heat2d requires nx, ny >= 4");
  }
  const Eigen::Index n = nx * ny;
  const double hx = 1.0 / static_cast<double>(nx + 1);
  const double hy = 1.0 / static_cast<double>(ny + 1);
  const double ihx2 = 1.0 / (hx * hx);
  const double ihy2 = 1.0 / (hy * hy);
  auto idx = [nx](Eigen::Index ix, Eigen::Index iy) { return iy * nx + ix; };

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index iy = 0; iy < ny; ++iy) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const Eigen::Index c = idx(ix, iy);
      A(c, c) = -2.0 * ihx2 - 2.0 * ihy2;
      if (ix > 0) {
        A(c, idx(ix - 1, iy)) = ihx2;
      }
      if (ix + 1 < nx) {
        A(c, idx(ix + 1, iy)) = ihx2;
      }
      if (iy > 0) {
        A(c, idx(ix, iy - 1)) = ihy2;
      }
      if (iy + 1 < ny) {
        A(c, idx(ix, iy + 1)) = ihy2;
      }
    }
  }

  // Perimeter cells in clockwise order, split into 7 contiguous segments.
  std::vector<Eigen::Index> perimeter;
  for (Eigen::Index ix = 0; ix < nx; ++ix) {
    perimeter.push_back(idx(ix, 0));
  }
  for (Eigen::Index iy = 1; iy < ny; ++iy) {
    perimeter.push_back(idx(nx - 1, iy));
  }
  for (Eigen::Index ix = nx - 2; ix >= 0; --ix) {
    perimeter.push_back(idx(ix, ny - 1));
  }
  for (Eigen::Index iy = ny - 2; iy >= 1; --iy) {
    perimeter.push_back(idx(0, iy));
  }
  const auto total = static_cast<Eigen::Index>(perimeter.size());
  if (total < 7) {
    throw std::invalid_argument("grid too small to host 7 boundary segments");
  }

  const Eigen::Index m = 7;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, m);
  std::vector<Eigen::MatrixXd> N;
  Eigen::Index at = 0;
  for (Eigen::Index seg = 0; seg < m; ++seg) {
    const Eigen::Index len = total / m + (seg < total % m ? 1 : 0);
    const double q = 1.0 + 0.1 * static_cast<double>(seg + 1);
    Eigen::MatrixXd Nseg = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index e = 0; e < len; ++e) {
      const Eigen::Index c = perimeter[static_cast<size_t>(at + e)];
      B(c, seg) = q;
      if (seg < 6) {
        Nseg(c, c) = -q;
      }
    }
    at += len;
    N.push_back(std::move(Nseg));
  }

  // Interior probe points on two rows of three.
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(6, n);
  const Eigen::Index px[3] = {nx / 4, nx / 2, (3 * nx) / 4};
  const Eigen::Index py[2] = {ny / 3, (2 * ny) / 3};
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < 2; ++j) {
    for (Eigen::Index i = 0; i < 3; ++i) {
      C(row++, idx(px[i], py[j])) = 1.0;
    }
  }

  return makeFirstOrder(Eigen::MatrixXd::Identity(n, n), A, N, B, C);
}

} // namespace bilintang
