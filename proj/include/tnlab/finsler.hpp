#pragma once

// Finsler curvature stack for Randers metrics F = alpha + beta:
//   g_y      = 1/2 d^2 F^2 / dy dy                       (fundamental tensor)
//   G^i      = 1/4 g^{il} ( [F^2]_{x^k y^l} y^k - [F^2]_{x^l} )
//   R^i_k    = 2 G^i_{x^k} - y^j G^i_{x^j y^k} + 2 G^j G^i_{y^j y^k}
//              - G^i_{y^j} G^j_{y^k}
//   K(P, y)  = g_y(R_y u, u) / ( g_y(y,y) g_y(u,u) - g_y(u,y)^2 )
//   Ric(x,y) = trace R^i_k
//
// All derivatives come from jets over the 8 variables (x, y).  The second
// derivatives of G needed by R^i_k are obtained from one nested evaluation:
// the spray is computed in degree-2 jets whose scalars are themselves
// degree-2 jets.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "tnlab/curvature.hpp"
#include "tnlab/errors.hpp"
#include "tnlab/jet.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/sampling.hpp"
#include "tnlab/zermelo.hpp"

namespace tnlab {

struct Flag {
  Point4 x{};
  Vec4<double> y{};
  Vec4<double> u{};
};

namespace detail {

template <class T>
struct SprayEval {
  T f2;
  Mat4<T> gy;
  Vec4<T> spray;
};

template <class T, class R>
SprayEval<T> eval_spray(const R& randers, const Vec4<T>& x, const Vec4<T>& y) {
  using J = Jet<T, 8, 2>;
  Vec4<J> xj, yj;
  for (int i = 0; i < 4; ++i) {
    xj[i] = J::variable(x[i], i);
    yj[i] = J::variable(y[i], 4 + i);
  }

  const RandersData<J> rd = randers(xj);
  J alpha2{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) alpha2 += rd.a[i][j] * yj[i] * yj[j];
  J f = sqrt(alpha2);
  for (int i = 0; i < 4; ++i) f += rd.b[i] * yj[i];
  const J f2 = f * f;

  SprayEval<T> out;
  out.f2 = f2.value();
  Vec4<T> df2_dx;
  Mat4<T> d2f2_dxdy;
  for (int l = 0; l < 4; ++l) {
    df2_dx[l] = f2.first(l);
    for (int k = 0; k < 4; ++k) d2f2_dxdy[k][l] = f2.second(k, 4 + l);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.gy[i][j] = 0.5 * f2.second(4 + i, 4 + j);

  const Mat4<T> ginv = inverse4(out.gy);
  for (int i = 0; i < 4; ++i) {
    T acc{};
    for (int l = 0; l < 4; ++l) {
      T inner{};
      for (int k = 0; k < 4; ++k) inner = inner + d2f2_dxdy[k][l] * y[k];
      acc = acc + ginv[i][l] * (inner - df2_dx[l]);
    }
    out.spray[i] = 0.25 * acc;
  }
  return out;
}

inline void require_nonzero_flagpole(const Vec4<double>& y) {
  if (y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0 && y[3] == 0.0)
    throw ZeroFlagpoleError("finsler: zero flagpole");
}

}  // namespace detail

template <class R>
Sym4 fundamental_tensor(const R& randers, const Point4& x,
                        const Vec4<double>& y) {
  detail::require_nonzero_flagpole(y);
  const auto ev = detail::eval_spray<double>(randers, x, y);
  return Sym4::from(ev.gy);
}

template <class R>
Vec4<double> spray_coefficients(const R& randers, const Point4& x,
                                const Vec4<double>& y) {
  detail::require_nonzero_flagpole(y);
  return detail::eval_spray<double>(randers, x, y).spray;
}

struct FinslerCurvature {
  Mat4<double> r;       // R^i_k
  Sym4 g_y;
  double f2 = 0.0;      // F^2(x, y)
  Vec4<double> spray{};
};

template <class R>
FinslerCurvature finsler_curvature_data(const R& randers, const Point4& x,
                                        const Vec4<double>& y) {
  detail::require_nonzero_flagpole(y);
  using OJ = Jet<double, 8, 2>;
  Vec4<OJ> ox, oy;
  for (int i = 0; i < 4; ++i) {
    ox[i] = OJ::variable(x[i], i);
    oy[i] = OJ::variable(y[i], 4 + i);
  }
  const auto ev = detail::eval_spray<OJ>(randers, ox, oy);

  Vec4<double> g{};
  Mat4<double> dg_dx, dg_dy;
  double d2g_dxdy[4][4][4];
  double d2g_dydy[4][4][4];
  for (int i = 0; i < 4; ++i) {
    g[i] = ev.spray[i].value();
    for (int k = 0; k < 4; ++k) {
      dg_dx[i][k] = ev.spray[i].first(k);
      dg_dy[i][k] = ev.spray[i].first(4 + k);
      for (int j = 0; j < 4; ++j) {
        d2g_dxdy[i][j][k] = ev.spray[i].second(j, 4 + k);
        d2g_dydy[i][j][k] = ev.spray[i].second(4 + j, 4 + k);
      }
    }
  }

  FinslerCurvature out;
  out.f2 = ev.f2.value();
  Mat4<double> gy;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gy[i][j] = ev.gy[i][j].value();
  out.g_y = Sym4::from(gy);
  out.spray = g;

  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      double s = 2.0 * dg_dx[i][k];
      for (int j = 0; j < 4; ++j) {
        s -= y[j] * d2g_dxdy[i][j][k];
        s += 2.0 * g[j] * d2g_dydy[i][j][k];
        s -= dg_dy[i][j] * dg_dy[j][k];
      }
      out.r[i][k] = s;
    }
  return out;
}

template <class R>
Mat4<double> riemann_endomorphism(const R& randers, const Point4& x,
                                  const Vec4<double>& y) {
  return finsler_curvature_data(randers, x, y).r;
}

inline double flag_curvature_from(const FinslerCurvature& data, const Flag& flag) {
  const Vec4<double> ru = matvec4(data.r, flag.u);
  const double gyy = quad_form4(data.g_y.mat(), flag.y, flag.y);
  const double guu = quad_form4(data.g_y.mat(), flag.u, flag.u);
  const double guy = quad_form4(data.g_y.mat(), flag.u, flag.y);
  const double denom = gyy * guu - guy * guy;
  if (denom < 1e-12 * gyy * guu)
    throw DegeneratePlaneError("flag_curvature: degenerate flag");
  return quad_form4(data.g_y.mat(), ru, flag.u) / denom;
}

template <class R>
double flag_curvature(const R& randers, const Flag& flag) {
  return flag_curvature_from(finsler_curvature_data(randers, flag.x, flag.y),
                             flag);
}

template <class R>
double finsler_ricci(const R& randers, const Point4& x, const Vec4<double>& y) {
  const Mat4<double> r = riemann_endomorphism(randers, x, y);
  return r[0][0] + r[1][1] + r[2][2] + r[3][3];
}

struct EinsteinSample {
  Point4 x{};
  Vec4<double> y{};
};

struct EinsteinReport {
  std::vector<EinsteinSample> points;
  std::vector<double> ricci_values;   // Ric(x, y)
  std::vector<double> predicted;      // 3 K F^2(x, y)
  double max_residual = 0.0;          // max |Ric - 3 K F^2|
  double max_residual_rel = 0.0;      // same, relative to F^2
  double base_fit_residual = 0.0;     // max |Ricci(g) - lambda g| entrywise
  double k = 0.0;
  double c = 0.0;
  double homothety_residual = 0.0;
};

// Einstein verification through the navigation data: fit the homothety
// constant c of the wind and the Einstein constant of the sea metric
// (Ricci ~ 3 (K + c^2) g, dimension 4), then compare Ric(x, y) against
// 3 K F^2 sample by sample.
template <class R, class G, class W>
EinsteinReport einstein_check(const R& randers, const NavigationData<G, W>& nav,
                              std::span<const EinsteinSample> samples) {
  if (samples.empty())
    throw std::invalid_argument("einstein_check: empty sample");

  std::vector<Point4> xs;
  xs.reserve(samples.size());
  for (const auto& s : samples) xs.push_back(s.x);

  const Homothety hom = homothety_constant(nav.wind, nav.metric, xs);

  double num = 0.0, den = 0.0;
  std::vector<Sym4> rics;
  std::vector<Mat4<double>> gs;
  for (const Point4& x : xs) {
    rics.push_back(ricci(nav.metric, x));
    gs.push_back(nav.metric(x));
    num += frob_dot4(rics.back().mat(), gs.back());
    den += frob_dot4(gs.back(), gs.back());
  }
  const double lambda = num / den;

  EinsteinReport rep;
  rep.c = hom.c;
  rep.homothety_residual = hom.residual;
  rep.k = lambda / 3.0 - hom.c * hom.c;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Mat4<double> resid =
        mat_add4(rics[i].mat(), mat_scale4(gs[i], -lambda));
    rep.base_fit_residual = std::max(rep.base_fit_residual, max_abs4(resid));
  }

  for (const auto& s : samples) {
    const FinslerCurvature data = finsler_curvature_data(randers, s.x, s.y);
    const double ric = data.r[0][0] + data.r[1][1] + data.r[2][2] + data.r[3][3];
    const double pred = 3.0 * rep.k * data.f2;
    rep.points.push_back(s);
    rep.ricci_values.push_back(ric);
    rep.predicted.push_back(pred);
    rep.max_residual = std::max(rep.max_residual, std::abs(ric - pred));
    rep.max_residual_rel =
        std::max(rep.max_residual_rel, std::abs(ric - pred) / data.f2);
  }
  return rep;
}

struct ConstancyScan {
  double k_min = 0.0;
  double k_max = 0.0;
  double spread = 0.0;
  int degenerate = 0;
};

template <class R>
ConstancyScan constancy_scan(const R& randers, std::span<const Flag> flags) {
  if (flags.size() < 1)
    throw std::invalid_argument("constancy_scan: needs at least one flag");
  ConstancyScan scan;
  bool any = false;
  for (const Flag& flag : flags) {
    double k;
    try {
      k = flag_curvature(randers, flag);
    } catch (const DegeneratePlaneError&) {
      ++scan.degenerate;
      continue;
    }
    if (!any) {
      scan.k_min = scan.k_max = k;
      any = true;
    } else {
      scan.k_min = std::min(scan.k_min, k);
      scan.k_max = std::max(scan.k_max, k);
    }
  }
  if (!any) throw DegeneratePlaneError("constancy_scan: all flags degenerate");
  scan.spread = scan.k_max - scan.k_min;
  return scan;
}

// Sampling helpers shared by the scans and the command-line tool.  Points
// keep the direct wind norm below `margin` so the conversion stays well
// conditioned near the domain boundary.
template <class G, class W>
std::vector<Point4> sample_admissible_points(const NavigationData<G, W>& nav,
                                             int count, SeededRng& rng,
                                             double radius = 2.0,
                                             double margin = 0.95,
                                             int attempts_per_point = 200) {
  std::vector<Point4> pts;
  long attempts = static_cast<long>(count) * attempts_per_point;
  while (static_cast<int>(pts.size()) < count && attempts-- > 0) {
    const Point4 x = sample_ball(rng, radius);
    const double w2 = wind_norm_direct(nav, x);
    if (w2 >= 0.0 && std::sqrt(w2) < margin) pts.push_back(x);
  }
  return pts;
}

template <class G, class W>
std::vector<EinsteinSample> sample_einstein_pairs(
    const NavigationData<G, W>& nav, int count, SeededRng& rng,
    double radius = 2.0, double margin = 0.95) {
  std::vector<EinsteinSample> out;
  const auto xs = sample_admissible_points(nav, count, rng, radius, margin);
  out.reserve(xs.size());
  for (const Point4& x : xs) out.push_back({x, sample_sphere(rng)});
  return out;
}

template <class R, class G, class W>
std::vector<Flag> sample_flags(const R& randers, const NavigationData<G, W>& nav,
                               int count, SeededRng& rng, double radius = 2.0,
                               double margin = 0.95) {
  std::vector<Flag> flags;
  const auto xs = sample_admissible_points(nav, count, rng, radius, margin);
  for (const Point4& x : xs) {
    const Vec4<double> y = sample_sphere(rng);
    const Sym4 gy = fundamental_tensor(randers, x, y);
    for (int attempt = 0; attempt < 50; ++attempt) {
      const Vec4<double> u = sample_sphere(rng);
      const double gyy = quad_form4(gy.mat(), y, y);
      const double guu = quad_form4(gy.mat(), u, u);
      const double guy = quad_form4(gy.mat(), u, y);
      if (gyy * guu - guy * guy > 1e-6 * gyy * guu) {
        flags.push_back(Flag{x, y, u});
        break;
      }
    }
  }
  return flags;
}

}  // namespace tnlab
