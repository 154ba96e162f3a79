#pragma once

// Killing fields of the flat and Taub-NUT metrics.  Flat-metric Killing
// fields are exactly the affine fields X = Q x + C with Q antisymmetric;
// inside that 10-parameter family the classifier re-derives, numerically,
// which combinations survive as isometries of g_a.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "tnlab/curvature.hpp"
#include "tnlab/errors.hpp"
#include "tnlab/fields.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/sampling.hpp"

namespace tnlab {

struct EuclideanKilling {
  Mat4<double> q{};
  Vec4<double> c{};

  EuclideanKilling(const Mat4<double>& q_in, const Vec4<double>& c_in)
      : q(q_in), c(c_in) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (q[i][j] != -q[j][i])
          throw std::invalid_argument("EuclideanKilling: Q not antisymmetric");
  }

  LinearVectorField field() const { return LinearVectorField{q, c}; }
};

// The 4-parameter rotation family preserving both g_0 and the 1-form omega:
//   Q = |  0   m   s   r |
//       | -m   0  -r   s |
//       | -s   r   0   n |
//       | -r  -s  -n   0 |,  C = 0.
struct TaubNutKillingParams {
  double m = 0.0, n = 0.0, r = 0.0, s = 0.0;

  Mat4<double> pattern_q() const {
    Mat4<double> q{};
    q[0][1] = m;
    q[0][2] = s;
    q[0][3] = r;
    q[1][0] = -m;
    q[1][2] = -r;
    q[1][3] = s;
    q[2][0] = -s;
    q[2][1] = r;
    q[2][3] = n;
    q[3][0] = -r;
    q[3][1] = -s;
    q[3][2] = -n;
    return q;
  }
};

inline LinearVectorField build_field(const TaubNutKillingParams& p) {
  return LinearVectorField{p.pattern_q(), {}};
}

inline TaubNutKillingParams vr_params(double r) { return {0.0, 0.0, r, 0.0}; }
inline TaubNutKillingParams us_params(double s) { return {0.0, 0.0, 0.0, s}; }
inline TaubNutKillingParams wmn_params(double m, double n) {
  return {m, n, 0.0, 0.0};
}

// (L_X omega)_i = X^k d_k w_i + w_k d_i X^k for the fixed rotational 1-form.
template <class X>
Vec4<double> lie_derivative_oneform(const X& field, const Point4& x) {
  using J = Jet<double, 4, 1>;
  Vec4<J> xj;
  for (int i = 0; i < 4; ++i) xj[i] = J::variable(x[i], i);
  const Vec4<J> w = HopfForm{}(xj);
  const Vec4<J> fx = field(xj);

  Vec4<double> lie{};
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      s += fx[k].value() * w[i].first(k);
      s += w[k].value() * fx[k].first(i);
    }
    lie[i] = s;
  }
  return lie;
}

// Coefficient order of the affine family: (q12, q13, q14, q23, q24, q34,
// c1, c2, c3, c4).
inline std::array<LinearVectorField, 10> killing_basis_fields() {
  std::array<LinearVectorField, 10> basis{};
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) {
    basis[k].q[pairs[k][0]][pairs[k][1]] = 1.0;
    basis[k].q[pairs[k][1]][pairs[k][0]] = -1.0;
  }
  for (int k = 0; k < 4; ++k) basis[6 + k].c[k] = 1.0;
  return basis;
}

class KillingClassification {
 public:
  explicit KillingClassification(std::vector<std::array<double, 10>> basis)
      : basis_(std::move(basis)) {}

  const std::vector<std::array<double, 10>>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }

  // Distance of each basis vector from the admissible 4-dimensional span
  // {q13 = q24, q14 = -q23, C = 0}; returns the worst one.
  double pattern_residual() const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::array<std::array<double, 10>, 4> pattern{};
    pattern[0][0] = 1.0;                               // q12
    pattern[1][5] = 1.0;                               // q34
    pattern[2][1] = inv_sqrt2;                         // q13
    pattern[2][4] = inv_sqrt2;                         // q24
    pattern[3][2] = inv_sqrt2;                         // q14
    pattern[3][3] = -inv_sqrt2;                        // q23

    double worst = 0.0;
    for (const auto& v : basis_) {
      std::array<double, 10> rem = v;
      for (const auto& p : pattern) {
        double dot = 0.0;
        for (int i = 0; i < 10; ++i) dot += v[i] * p[i];
        for (int i = 0; i < 10; ++i) rem[i] -= dot * p[i];
      }
      double n2 = 0.0;
      for (int i = 0; i < 10; ++i) n2 += rem[i] * rem[i];
      worst = std::max(worst, std::sqrt(n2));
    }
    return worst;
  }

  double translation_max() const {
    double worst = 0.0;
    for (const auto& v : basis_)
      for (int i = 6; i < 10; ++i) worst = std::max(worst, std::abs(v[i]));
    return worst;
  }

 private:
  std::vector<std::array<double, 10>> basis_;
};

namespace detail {

template <class M>
std::vector<std::array<double, 10>> killing_kernel(
    const M& metric, std::span<const Point4> pts, double tol) {
  const auto basis_fields = killing_basis_fields();
  MatrixXd sys(static_cast<int>(pts.size()) * 10, 10);
  int row = 0;
  for (const Point4& x : pts) {
    std::array<Sym4, 10> lies;
    for (int col = 0; col < 10; ++col)
      lies[col] = lie_derivative_metric(basis_fields[col], metric, x);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        for (int col = 0; col < 10; ++col) sys.at(row, col) = lies[col](i, j);
        ++row;
      }
  }
  std::vector<std::array<double, 10>> out;
  for (const auto& v : svd_kernel(sys, tol)) {
    std::array<double, 10> a{};
    for (int i = 0; i < 10; ++i) a[i] = v[i];
    out.push_back(a);
  }
  return out;
}

}  // namespace detail

inline constexpr std::uint64_t kClassifyAugmentSeed = 0x9e3779b97f4a7c15ull;

// Solves "L_X g = 0 at every sample point" over the 10 affine coefficients.
// The given sample is cross-checked against an augmented one (up to 100
// points); if extra points cut the solution space further, the original
// sample was underdetermined and an error is raised.
template <class M>
KillingClassification classify_killing(
    const M& metric, const std::vector<Point4>& sample,
    std::uint64_t augment_seed = kClassifyAugmentSeed, double tol = 1e-9) {
  if (sample.empty())
    throw std::invalid_argument("classify_killing: empty sample");

  const auto base = detail::killing_kernel(metric, sample, tol);

  SeededRng rng(augment_seed);
  std::vector<Point4> augmented = sample;
  const int extra = std::max(40, static_cast<int>(sample.size()) * 2) -
                    static_cast<int>(sample.size());
  for (int i = 0; i < extra && static_cast<int>(augmented.size()) < 100; ++i)
    augmented.push_back(sample_ball(rng, 2.0));
  const auto checked = detail::killing_kernel(metric, augmented, tol);

  if (checked.size() < base.size())
    throw UnderdeterminedSamplingError(
        "classify_killing: solution dimension shrank when more points were "
        "added; sample does not pin the system");

  // equal dimensions + nested constraint sets => equal spans; return the
  // better-conditioned augmented basis
  return KillingClassification(checked);
}

}  // namespace tnlab
