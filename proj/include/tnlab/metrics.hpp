#pragma once

// Concrete Riemannian metrics on R^4: the flat metric, the Taub-NUT family
// in its two printed forms, and the fibered u*h + u^{-1}(dt + A)^2 ansatz
// over a 3-dimensional chart.

#include <array>
#include <stdexcept>

#include "tnlab/errors.hpp"
#include "tnlab/fields.hpp"
#include "tnlab/linalg.hpp"

namespace tnlab {

struct FlatMetric {
  template <class S>
  Mat4<S> operator()(const Vec4<S>&) const {
    Mat4<S> g{};
    for (int i = 0; i < 4; ++i) g[i][i] = S(1.0);
    return g;
  }
};

// Taub-NUT metric g_a, entrywise table with B = a|x|^2 + 1, A = a(1 + 1/B):
//
//   | B-A(x2)^2   A x1 x2    -A x2 x4    A x2 x3  |
//   | A x1 x2     B-A(x1)^2   A x1 x4   -A x1 x3  |
//   | -A x2 x4    A x1 x4     B-A(x4)^2  A x3 x4  |
//   | A x2 x3    -A x1 x3     A x3 x4    B-A(x3)^2|
//
// Rational in x, so it extends smoothly through the origin, where it equals
// the identity form.  This is the primary evaluation path.
class TaubNutMetric {
 public:
  explicit TaubNutMetric(double nut) : a_(nut) {
    if (!(nut >= 0.0))
      throw std::invalid_argument("TaubNutMetric: parameter must be >= 0");
  }

  double nut() const { return a_; }

  template <class S>
  Mat4<S> operator()(const Vec4<S>& x) const {
    const S r2 = dot4(x, x);
    const S b = a_ * r2 + 1.0;
    const S aa = a_ * (1.0 + recip(b));
    const S& x1 = x[0];
    const S& x2 = x[1];
    const S& x3 = x[2];
    const S& x4 = x[3];

    Mat4<S> g;
    g[0][0] = b - aa * x2 * x2;
    g[0][1] = aa * x1 * x2;
    g[0][2] = -(aa * x2 * x4);
    g[0][3] = aa * x2 * x3;
    g[1][0] = aa * x1 * x2;
    g[1][1] = b - aa * x1 * x1;
    g[1][2] = aa * x1 * x4;
    g[1][3] = -(aa * x1 * x3);
    g[2][0] = -(aa * x2 * x4);
    g[2][1] = aa * x1 * x4;
    g[2][2] = b - aa * x4 * x4;
    g[2][3] = aa * x3 * x4;
    g[3][0] = aa * x2 * x3;
    g[3][1] = -(aa * x1 * x3);
    g[3][2] = aa * x3 * x4;
    g[3][3] = b - aa * x3 * x3;
    return g;
  }

 private:
  double a_;
};

// Cross-check path for the same family:
//   g_a = (a|x|^2 + 1) g_0 - (a (a|x|^2 + 2) / (a|x|^2 + 1)) omega (x) omega.
struct TaubNutClosedForm {
  double a = 0.0;

  template <class S>
  Mat4<S> operator()(const Vec4<S>& x) const {
    const S r2 = dot4(x, x);
    const S b = a * r2 + 1.0;
    const S coeff = (a * (a * r2 + 2.0)) * recip(b);
    const Vec4<S> w = HopfForm{}(x);

    Mat4<S> g{};
    for (int i = 0; i < 4; ++i) g[i][i] = b;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = g[i][j] - coeff * w[i] * w[j];
    return g;
  }
};

struct Box3 {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  bool contains(const std::array<double, 3>& p) const {
    for (int i = 0; i < 3; ++i)
      if (!(p[i] >= lo[i] && p[i] <= hi[i])) return false;
    return true;
  }
};

// Potential u > 0 and 1-form A on a box chart of R^3.
template <class UField, class AField>
struct GibbonsHawkingData {
  UField u;
  AField a;
  Box3 chart;
};

// 4-metric u h + u^{-1}(dt + A)^2 with h flat, coordinates (p1, p2, p3, t).
template <class UField, class AField>
class GibbonsHawkingMetric {
 public:
  explicit GibbonsHawkingMetric(GibbonsHawkingData<UField, AField> data)
      : data_(std::move(data)) {}

  const GibbonsHawkingData<UField, AField>& data() const { return data_; }

  template <class S>
  Mat4<S> operator()(const Vec4<S>& x) const {
    const std::array<double, 3> pd = {deep_value(x[0]), deep_value(x[1]),
                                      deep_value(x[2])};
    if (!data_.chart.contains(pd))
      throw OutsideChartError("GibbonsHawkingMetric: point outside chart");

    const std::array<S, 3> p = {x[0], x[1], x[2]};
    const S u = data_.u(p);
    if (deep_value(u) <= 0.0)
      throw ChartPositivityError("GibbonsHawkingMetric: u <= 0 at point");
    const std::array<S, 3> av = data_.a(p);
    const S iu = recip(u);

    Mat4<S> g;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        g[i][j] = iu * av[i] * av[j];
        if (i == j) g[i][j] = g[i][j] + u;
      }
      g[i][3] = iu * av[i];
      g[3][i] = iu * av[i];
    }
    g[3][3] = iu;
    return g;
  }

 private:
  GibbonsHawkingData<UField, AField> data_;
};

// Validates u > 0 on a 3x3x3 probe grid (corners, edge midpoints, center)
// before handing out the metric.
template <class UField, class AField>
GibbonsHawkingMetric<UField, AField> gibbons_hawking_metric(
    const GibbonsHawkingData<UField, AField>& data) {
  for (int ix = 0; ix < 3; ++ix)
    for (int iy = 0; iy < 3; ++iy)
      for (int iz = 0; iz < 3; ++iz) {
        const std::array<double, 3> p = {
            data.chart.lo[0] + 0.5 * ix * (data.chart.hi[0] - data.chart.lo[0]),
            data.chart.lo[1] + 0.5 * iy * (data.chart.hi[1] - data.chart.lo[1]),
            data.chart.lo[2] + 0.5 * iz * (data.chart.hi[2] - data.chart.lo[2])};
        if (!(data.u(p) > 0.0))
          throw ChartPositivityError(
              "gibbons_hawking_metric: u <= 0 on probe grid");
      }
  return GibbonsHawkingMetric<UField, AField>(data);
}

// Max-abs component of du - curl A at p (curl A is the flat Hodge dual of
// dA on R^3 with the standard orientation).
template <class UField, class AField>
double monopole_residual(const GibbonsHawkingData<UField, AField>& data,
                         const std::array<double, 3>& p) {
  if (!data.chart.contains(p))
    throw OutsideChartError("monopole_residual: point outside chart");

  using J = Jet<double, 4, 1>;
  const std::array<J, 3> pj = {J::variable(p[0], 0), J::variable(p[1], 1),
                               J::variable(p[2], 2)};
  const J u = data.u(pj);
  const std::array<J, 3> av = data.a(pj);

  const double curl[3] = {av[2].first(1) - av[1].first(2),
                          av[0].first(2) - av[2].first(0),
                          av[1].first(0) - av[0].first(1)};
  double res = 0.0;
  for (int i = 0; i < 3; ++i)
    res = std::max(res, std::abs(u.first(i) - curl[i]));
  return res;
}

}  // namespace tnlab
