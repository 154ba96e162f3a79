#pragma once

// Levi-Civita curvature from exact metric derivatives:
//   Gamma^i_{jk} = 1/2 g^{im} (d_j g_{mk} + d_k g_{jm} - d_m g_{jk})
//   R^i_{jkl}    = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//                  + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj}
//   Ric_{jl}     = R^i_{jil}
// Everything is assembled from one second-order jet evaluation of the metric,
// never from differentiated interpolants.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "tnlab/errors.hpp"
#include "tnlab/jet.hpp"
#include "tnlab/linalg.hpp"

namespace tnlab {

struct Christoffel {
  double g[4][4][4];  // g[i][j][k] = Gamma^i_{jk}, symmetric in (j, k)
};

struct RiemannTensor {
  double r[4][4][4][4];  // r[i][j][k][l] = R^i_{jkl}

  double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) m = std::max(m, std::abs(r[i][j][k][l]));
    return m;
  }
};

struct CurvatureReport {
  Point4 point{};
  Sym4 ricci;
  double ricci_max_abs = 0.0;
  double riemann_max_abs = 0.0;
};

struct MetricDerivs {
  Mat4<double> g;
  std::array<Mat4<double>, 4> dg;                  // dg[k][i][j] = d_k g_ij
  std::array<std::array<Mat4<double>, 4>, 4> ddg;  // ddg[k][l] = d_k d_l g
};

template <class M>
MetricDerivs metric_derivs2(const M& metric, const Point4& x) {
  using J = Jet<double, 4, 2>;
  Vec4<J> xj;
  for (int i = 0; i < 4; ++i) xj[i] = J::variable(x[i], i);
  const Mat4<J> gj = metric(xj);

  MetricDerivs d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      d.g[i][j] = gj[i][j].value();
      for (int k = 0; k < 4; ++k) {
        d.dg[k][i][j] = gj[i][j].first(k);
        for (int l = 0; l < 4; ++l) d.ddg[k][l][i][j] = gj[i][j].second(k, l);
      }
    }
  return d;
}

namespace detail {

inline Christoffel christoffel_from(const MetricDerivs& d) {
  Mat4<double> ginv;
  try {
    ginv = inverse4(d.g);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("christoffel: degenerate metric");
  }
  Christoffel c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = j; k < 4; ++k) {
        double s = 0.0;
        for (int m = 0; m < 4; ++m)
          s += ginv[i][m] * (d.dg[j][m][k] + d.dg[k][j][m] - d.dg[m][j][k]);
        c.g[i][j][k] = c.g[i][k][j] = 0.5 * s;
      }
  return c;
}

inline RiemannTensor riemann_from(const MetricDerivs& d) {
  const Mat4<double> ginv = inverse4(d.g);
  const Christoffel c = christoffel_from(d);

  // d_k g^{im} = -g^{ip} (d_k g_{pq}) g^{qm}
  std::array<Mat4<double>, 4> dginv{};
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int m = 0; m < 4; ++m) {
        double s = 0.0;
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q)
            s += ginv[i][p] * d.dg[k][p][q] * ginv[q][m];
        dginv[k][i][m] = -s;
      }

  // dGamma[k][i][l][j] = d_k Gamma^i_{lj}
  double dGamma[4][4][4][4];
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int l = 0; l < 4; ++l)
        for (int j = 0; j < 4; ++j) {
          double s = 0.0;
          for (int m = 0; m < 4; ++m) {
            const double bracket =
                d.dg[l][m][j] + d.dg[j][l][m] - d.dg[m][l][j];
            const double dbracket =
                d.ddg[k][l][m][j] + d.ddg[k][j][l][m] - d.ddg[k][m][l][j];
            s += dginv[k][i][m] * bracket + ginv[i][m] * dbracket;
          }
          dGamma[k][i][l][j] = 0.5 * s;
        }

  RiemannTensor r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = dGamma[k][i][l][j] - dGamma[l][i][k][j];
          for (int m = 0; m < 4; ++m)
            s += c.g[i][k][m] * c.g[m][l][j] - c.g[i][l][m] * c.g[m][k][j];
          r.r[i][j][k][l] = s;
        }
  return r;
}

}  // namespace detail

template <class M>
Christoffel christoffel(const M& metric, const Point4& x) {
  return detail::christoffel_from(metric_derivs2(metric, x));
}

template <class M>
RiemannTensor riemann_tensor(const M& metric, const Point4& x) {
  return detail::riemann_from(metric_derivs2(metric, x));
}

template <class M>
Sym4 ricci(const M& metric, const Point4& x) {
  const RiemannTensor r = riemann_tensor(metric, x);
  Mat4<double> ric{};
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i) ric[j][l] += r.r[i][j][i][l];
  return Sym4::from(ric);
}

template <class M>
CurvatureReport curvature_report(const M& metric, const Point4& x) {
  const MetricDerivs d = metric_derivs2(metric, x);
  const RiemannTensor r = detail::riemann_from(d);
  Mat4<double> ric{};
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i) ric[j][l] += r.r[i][j][i][l];

  CurvatureReport rep;
  rep.point = x;
  rep.ricci = Sym4::from(ric);
  rep.ricci_max_abs = rep.ricci.max_abs();
  rep.riemann_max_abs = r.max_abs();
  return rep;
}

// Sectional curvature of span(u, v):
//   K = g(R(u, v)v, u) / (g(u,u) g(v,v) - g(u,v)^2).
template <class M>
double sectional_curvature(const M& metric, const Point4& x,
                           const Vec4<double>& u, const Vec4<double>& v) {
  const MetricDerivs d = metric_derivs2(metric, x);
  const RiemannTensor r = detail::riemann_from(d);

  const double guu = quad_form4(d.g, u, u);
  const double gvv = quad_form4(d.g, v, v);
  const double guv = quad_form4(d.g, u, v);
  const double gram = guu * gvv - guv * guv;
  if (gram < 1e-12 * std::max(1.0, guu * gvv))
    throw DegeneratePlaneError("sectional_curvature: degenerate plane");

  Vec4<double> ruvv{};  // (R(u, v) v)^i = R^i_{jkl} v^j u^k v^l
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += r.r[i][j][k][l] * v[j] * u[k] * v[l];
    ruvv[i] = s;
  }
  return quad_form4(d.g, ruvv, u) / gram;
}

// (L_X g)_{ij} = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k
template <class X, class M>
Sym4 lie_derivative_metric(const X& field, const M& metric, const Point4& x) {
  using J = Jet<double, 4, 1>;
  Vec4<J> xj;
  for (int i = 0; i < 4; ++i) xj[i] = J::variable(x[i], i);
  const Mat4<J> gj = metric(xj);
  const Vec4<J> fx = field(xj);

  Mat4<double> lie{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) {
        s += fx[k].value() * gj[i][j].first(k);
        s += gj[k][j].value() * fx[k].first(i);
        s += gj[i][k].value() * fx[k].first(j);
      }
      lie[i][j] = s;
    }
  return Sym4::from(lie);
}

template <class X, class M>
double killing_residual(const X& field, const M& metric,
                        std::span<const Point4> sample) {
  if (sample.empty())
    throw std::invalid_argument("killing_residual: empty sample");
  double worst = 0.0;
  for (const Point4& x : sample)
    worst = std::max(worst, lie_derivative_metric(field, metric, x).max_abs());
  return worst;
}

struct Homothety {
  double c = 0.0;
  double residual = 0.0;
};

// Least-squares fit of L_X g = -4 c g over the sample; the residual is the
// max-abs entry of L_X g + 4 c g.
template <class X, class M>
Homothety homothety_constant(const X& field, const M& metric,
                             std::span<const Point4> sample) {
  if (sample.empty())
    throw std::invalid_argument("homothety_constant: empty sample");
  double num = 0.0, den = 0.0;
  std::vector<Sym4> lies;
  std::vector<Mat4<double>> gs;
  lies.reserve(sample.size());
  gs.reserve(sample.size());
  for (const Point4& x : sample) {
    lies.push_back(lie_derivative_metric(field, metric, x));
    gs.push_back(metric(x));
    num += frob_dot4(lies.back().mat(), gs.back());
    den += frob_dot4(gs.back(), gs.back());
  }
  Homothety h;
  h.c = -num / (4.0 * den);
  for (std::size_t i = 0; i < lies.size(); ++i) {
    const Mat4<double> resid =
        mat_add4(lies[i].mat(), mat_scale4(gs[i], 4.0 * h.c));
    h.residual = std::max(h.residual, max_abs4(resid));
  }
  return h;
}

}  // namespace tnlab
