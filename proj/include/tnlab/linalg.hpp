#pragma once

// Dense 4x4 kernel shared by every module: generic (jet-valued) vectors and
// matrices, the exactly-symmetric Sym4 container, a symmetric eigensolver,
// and an orthonormal nullspace routine for the Killing classification.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tnlab/errors.hpp"
#include "tnlab/jet.hpp"

namespace tnlab {

template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;
using Point4 = Vec4<double>;

template <class T>
T dot4(const Vec4<T>& a, const Vec4<T>& b) {
  T s{};
  for (int i = 0; i < 4; ++i) s = s + a[i] * b[i];
  return s;
}

template <class T>
Vec4<T> matvec4(const Mat4<T>& m, const Vec4<T>& v) {
  Vec4<T> out{};
  for (int i = 0; i < 4; ++i) {
    T acc{};
    for (int j = 0; j < 4; ++j) acc = acc + m[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

template <class T>
T quad_form4(const Mat4<T>& g, const Vec4<T>& u, const Vec4<T>& v) {
  return dot4(u, matvec4(g, v));
}

inline Mat4<double> identity4() {
  Mat4<double> m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat4<double> mat_mul4(const Mat4<double>& a, const Mat4<double>& b) {
  Mat4<double> r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline Mat4<double> mat_add4(const Mat4<double>& a, const Mat4<double>& b) {
  Mat4<double> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

inline Mat4<double> mat_scale4(const Mat4<double>& a, double s) {
  Mat4<double> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] * s;
  return r;
}

inline double max_abs4(const Mat4<double>& a) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j]));
  return m;
}

inline double frob_dot4(const Mat4<double>& a, const Mat4<double>& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += a[i][j] * b[i][j];
  return s;
}

inline double norm4(const Vec4<double>& v) { return std::sqrt(dot4(v, v)); }

inline Vec4<double> vec_scale4(const Vec4<double>& v, double s) {
  return {v[0] * s, v[1] * s, v[2] * s, v[3] * s};
}

inline Vec4<double> vec_add4(const Vec4<double>& a, const Vec4<double>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

inline Vec4<double> vec_sub4(const Vec4<double>& a, const Vec4<double>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

// Symmetric 4x4 bilinear form; mirrored entries share one stored value, so
// the symmetry invariant holds exactly.
class Sym4 {
 public:
  Sym4() = default;

  static Sym4 from(const Mat4<double>& m) {
    Sym4 s;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) s.set(i, j, 0.5 * (m[i][j] + m[j][i]));
    return s;
  }

  static Sym4 identity() {
    Sym4 s;
    for (int i = 0; i < 4; ++i) s.set(i, i, 1.0);
    return s;
  }

  double operator()(int i, int j) const { return e_[i][j]; }
  void set(int i, int j, double v) { e_[i][j] = e_[j][i] = v; }

  const Mat4<double>& mat() const { return e_; }
  double max_abs() const { return max_abs4(e_); }

 private:
  Mat4<double> e_{};
};

inline double max_abs_diff(const Sym4& a, const Sym4& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

struct SymEigen4 {
  std::array<double, 4> values;        // ascending
  std::array<Vec4<double>, 4> vectors; // vectors[k] pairs with values[k]
};

SymEigen4 eigen_sym4(const Sym4& m);

// Inverse through the eigendecomposition; SingularMatrixError when the
// smallest eigenvalue magnitude is below 1e-12 of the largest.
Sym4 invert_sym4(const Sym4& m);

bool is_positive_definite(const Sym4& m);  // leading principal minors

struct MatrixXd {
  int rows = 0, cols = 0;
  std::vector<double> a;

  MatrixXd() = default;
  MatrixXd(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Orthonormal basis of the kernel: singular vectors whose singular value is
// at most tol times the largest one.  Supports rows, cols <= 64.
std::vector<std::vector<double>> nullspace(const MatrixXd& system,
                                           double tol = 1e-9);

// Same routine without the size cap, for internal stacked systems.
std::vector<std::vector<double>> svd_kernel(const MatrixXd& system, double tol);

// Gauss-Jordan inverse with value-magnitude pivoting; works for jet scalars.
template <class T>
Mat4<T> inverse4(const Mat4<T>& in) {
  Mat4<T> a = in;
  Mat4<T> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = T(1.0);

  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) scale = std::max(scale, std::abs(deep_value(in[i][j])));
  const double floor = 1e-14 * std::max(1.0, scale);

  for (int col = 0; col < 4; ++col) {
    int piv = col;
    double best = std::abs(deep_value(a[col][col]));
    for (int r = col + 1; r < 4; ++r) {
      const double cand = std::abs(deep_value(a[r][col]));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best < floor) throw SingularMatrixError("inverse4: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);

    const T ip = recip(a[col][col]);
    for (int j = 0; j < 4; ++j) {
      a[col][j] = a[col][j] * ip;
      inv[col][j] = inv[col][j] * ip;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const T f = a[r][col];
      for (int j = 0; j < 4; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace tnlab
