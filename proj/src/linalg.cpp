#include "tnlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tnlab {

SymEigen4 eigen_sym4(const Sym4& m) {
  Mat4<double> a = m.mat();
  Mat4<double> v = identity4();

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30 * std::max(1.0, max_abs4(a) * max_abs4(a))) break;

    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::array<int, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i][i] < a[j][j]; });

  SymEigen4 out;
  for (int k = 0; k < 4; ++k) {
    out.values[k] = a[order[k]][order[k]];
    for (int i = 0; i < 4; ++i) out.vectors[k][i] = v[i][order[k]];
  }
  return out;
}

Sym4 invert_sym4(const Sym4& m) {
  const SymEigen4 eig = eigen_sym4(m);
  double lo = std::abs(eig.values[0]), hi = lo;
  for (double ev : eig.values) {
    lo = std::min(lo, std::abs(ev));
    hi = std::max(hi, std::abs(ev));
  }
  if (lo < 1e-12 * hi || hi == 0.0)
    throw SingularMatrixError("invert_sym4: eigenvalue ratio below 1e-12");

  Mat4<double> inv{};
  for (int k = 0; k < 4; ++k) {
    const double w = 1.0 / eig.values[k];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        inv[i][j] += w * eig.vectors[k][i] * eig.vectors[k][j];
  }
  return Sym4::from(inv);
}

bool is_positive_definite(const Sym4& m) {
  const auto& e = m.mat();
  const double d1 = e[0][0];
  const double d2 = e[0][0] * e[1][1] - e[0][1] * e[1][0];
  double d3 = 0.0;
  {
    const double a = e[0][0], b = e[0][1], c = e[0][2];
    const double d = e[1][0], f = e[1][1], g = e[1][2];
    const double h = e[2][0], i = e[2][1], j = e[2][2];
    d3 = a * (f * j - g * i) - b * (d * j - g * h) + c * (d * i - f * h);
  }
  double d4 = 0.0;
  {
    // cofactor expansion along the first row
    for (int col = 0; col < 4; ++col) {
      double minor[3][3];
      for (int r = 1; r < 4; ++r) {
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
          if (c == col) continue;
          minor[r - 1][cc++] = e[r][c];
        }
      }
      const double det3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                          minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                          minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
      d4 += (col % 2 == 0 ? 1.0 : -1.0) * e[0][col] * det3;
    }
  }
  return d1 > 0.0 && d2 > 0.0 && d3 > 0.0 && d4 > 0.0;
}

// One-sided Jacobi: rotate column pairs of A until mutually orthogonal; the
// accumulated right factor V is orthogonal and sigma_j = |col_j|.
std::vector<std::vector<double>> svd_kernel(const MatrixXd& system, double tol) {
  const int m = system.rows, n = system.cols;
  std::vector<std::vector<double>> cols(n, std::vector<double>(m, 0.0));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c) cols[c][r] = system.at(r, c);
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int c = 0; c < n; ++c) v[c][c] = 1.0;

  for (int sweep = 0; sweep < 64; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int r = 0; r < m; ++r) {
          app += cols[p][r] * cols[p][r];
          aqq += cols[q][r] * cols[q][r];
          apq += cols[p][r] * cols[q][r];
        }
        if (std::abs(apq) <= 1e-15 * std::sqrt(app * aqq) || apq == 0.0)
          continue;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int r = 0; r < m; ++r) {
          const double xp = cols[p][r], xq = cols[q][r];
          cols[p][r] = c * xp - s * xq;
          cols[q][r] = s * xp + c * xq;
        }
        for (int r = 0; r < n; ++r) {
          const double vp = v[p][r], vq = v[q][r];
          v[p][r] = c * vp - s * vq;
          v[q][r] = s * vp + c * vq;
        }
        rotated = true;
      }
    if (!rotated) break;
  }

  std::vector<double> sigma(n, 0.0);
  double sigma_max = 0.0;
  for (int c = 0; c < n; ++c) {
    double s2 = 0.0;
    for (int r = 0; r < m; ++r) s2 += cols[c][r] * cols[c][r];
    sigma[c] = std::sqrt(s2);
    sigma_max = std::max(sigma_max, sigma[c]);
  }

  std::vector<int> kernel_cols;
  for (int c = 0; c < n; ++c)
    if (sigma[c] <= tol * sigma_max) kernel_cols.push_back(c);
  std::stable_sort(kernel_cols.begin(), kernel_cols.end(),
                   [&](int a, int b) { return sigma[a] < sigma[b]; });

  std::vector<std::vector<double>> basis;
  basis.reserve(kernel_cols.size());
  for (int c : kernel_cols) basis.push_back(v[c]);
  return basis;
}

std::vector<std::vector<double>> nullspace(const MatrixXd& system, double tol) {
  if (system.rows < 1 || system.cols < 1 || system.rows > 64 || system.cols > 64)
    throw std::invalid_argument("nullspace: dimensions must be within 1..64");
  return svd_kernel(system, tol);
}

}  // namespace tnlab
