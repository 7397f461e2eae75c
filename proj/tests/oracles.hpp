#pragma once

// Reference implementations used only by tests. They share no code with the
// library's solvers.

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct FaceSolution {
  std::uint32_t mask = 0;
  LVector point;
};

// Minimizes sum_i w_i (x_i - y_i)^2 over {x : roots x >= 0} by trying every
// active set K: solve the full KKT system
//   [ W   -R_K^T ] [x]   [W y]
//   [ R_K   0    ] [l] = [ 0 ]
// and keep the feasible candidate with l >= 0 closest to y.
inline std::optional<FaceSolution> brute_force_projection(const Eigen::MatrixXd& roots,
                                                          const Eigen::VectorXd& y,
                                                          const Eigen::VectorXd& w,
                                                          long double tol = 1e-12L) {
  const int d = static_cast<int>(roots.rows());
  const int n = static_cast<int>(roots.cols());
  const LMatrix r = roots.cast<long double>();
  const LVector yl = y.cast<long double>();
  const LVector wl = w.cast<long double>();
  const long double scale = std::max<long double>(1, yl.norm());

  std::optional<FaceSolution> best;
  long double best_dist = std::numeric_limits<long double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::vector<int> k;
    for (int i = 0; i < d; ++i)
      if ((mask >> i) & 1u) k.push_back(i);
    const int m = static_cast<int>(k.size());
    LMatrix kkt = LMatrix::Zero(n + m, n + m);
    LVector rhs = LVector::Zero(n + m);
    kkt.topLeftCorner(n, n) = wl.asDiagonal();
    rhs.head(n) = wl.cwiseProduct(yl);
    for (int a = 0; a < m; ++a) {
      const LVector ra = r.row(k[a]).transpose() / r.row(k[a]).norm();
      kkt.block(0, n + a, n, 1) = -ra;
      kkt.block(n + a, 0, 1, n) = ra.transpose();
    }
    const LVector sol = kkt.fullPivLu().solve(rhs);
    const LVector x = sol.head(n);
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) ok = sol(n + a) >= -tol * scale;
    for (int i = 0; i < d && ok; ++i) {
      if ((mask >> i) & 1u) continue;
      ok = r.row(i).dot(x) / r.row(i).norm() >= -tol * scale;
    }
    if (!ok) continue;
    const LVector diff = x - yl;
    const long double dist = (diff.array().square() * wl.array()).sum();
    if (dist < best_dist) {
      best_dist = dist;
      best = FaceSolution{mask, x};
    }
  }
  return best;
}

// #{x in F_q^n : (r, x) != 0 mod q for every row r}, by plain enumeration.
inline std::uint64_t count_off_hyperplanes(const Eigen::MatrixXi& normals, int n, int q) {
  std::vector<int> x(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool off = true;
    for (int h = 0; h < normals.rows() && off; ++h) {
      long long s = 0;
      for (int i = 0; i < n; ++i) s += static_cast<long long>(normals(h, i)) * x[i];
      off = ((s % q) + q) % q != 0;
    }
    if (off) ++count;
    int i = 0;
    while (i < n && ++x[i] == q) x[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace oracle
