#pragma once

// Zermelo navigation: a Riemannian "sea" metric g and wind V with |V|_g < 1
// correspond to the Randers data
//   a_ij = g_ij / (1 - |V|^2) + V_i V_j / (1 - |V|^2)^2,
//   b_i  = -V_i / (1 - |V|^2),       V_i = g_ij V^j,
// plus the inverse map, the Randers length F = alpha + beta, and the closed
// wind-norm expressions under cross-check.

#include <cmath>
#include <stdexcept>

#include "tnlab/errors.hpp"
#include "tnlab/linalg.hpp"

namespace tnlab {

template <class G, class W>
struct NavigationData {
  G metric;
  W wind;
};

template <class S>
struct RandersData {
  Mat4<S> a;
  Vec4<S> b;
};

// Field-level conversion, evaluable at jet scalars so the Finsler stack can
// differentiate straight through it.
template <class G, class W>
struct RandersFromNavigation {
  G metric;
  W wind;

  template <class S>
  RandersData<S> operator()(const Vec4<S>& x) const {
    const Mat4<S> g = metric(x);
    const Vec4<S> v = wind(x);
    const Vec4<S> vlow = matvec4(g, v);
    const S s2 = dot4(vlow, v);
    if (deep_value(s2) >= 1.0)
      throw WindTooStrongError("randers conversion: |V|_g >= 1 at point");
    const S den = recip(1.0 - s2);

    RandersData<S> out;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j)
        out.a[i][j] = g[i][j] * den + vlow[i] * vlow[j] * (den * den);
      out.b[i] = -(vlow[i] * den);
    }
    return out;
  }
};

template <class G, class W>
RandersFromNavigation<G, W> make_randers(const NavigationData<G, W>& nav) {
  return RandersFromNavigation<G, W>{nav.metric, nav.wind};
}

struct RandersPointData {
  Sym4 a;
  Vec4<double> b;
};

template <class G, class W>
RandersPointData navigation_to_randers(const NavigationData<G, W>& nav,
                                       const Point4& x) {
  const RandersData<double> d = make_randers(nav)(x);
  return RandersPointData{Sym4::from(d.a), d.b};
}

struct NavigationPointData {
  Sym4 g;
  Vec4<double> wind;
};

// Pointwise inverse of the conversion.  Uses |b|_a^2 = |V|_g^2 and
// g_ij = (1 - |b|^2)(a_ij - b_i b_j), V_i = -(1 - |b|^2) b_i.
inline NavigationPointData zermelo_inverse(const Sym4& a, const Vec4<double>& b) {
  const Sym4 ainv = invert_sym4(a);
  const double s2 = quad_form4(ainv.mat(), b, b);
  if (s2 >= 1.0)
    throw InvalidRandersError("zermelo_inverse: |b|_a >= 1");

  const double om = 1.0 - s2;
  Mat4<double> g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = om * (a(i, j) - b[i] * b[j]);
  const Sym4 gs = Sym4::from(g);
  const Sym4 ginv = invert_sym4(gs);

  Vec4<double> vlow = vec_scale4(b, -om);
  return NavigationPointData{gs, matvec4(ginv.mat(), vlow)};
}

template <class R>
NavigationPointData randers_to_navigation(const R& randers, const Point4& x) {
  const RandersData<double> d = randers(x);
  return zermelo_inverse(Sym4::from(d.a), d.b);
}

// F(x, y) = sqrt(a_ij y^i y^j) + b_i y^i
template <class R>
double randers_value(const R& randers, const Point4& x, const Vec4<double>& y) {
  if (y[0] == 0.0 && y[1] == 0.0 && y[2] == 0.0 && y[3] == 0.0)
    throw ZeroFlagpoleError("randers_value: zero tangent vector");
  const RandersData<double> d = randers(x);
  return std::sqrt(quad_form4(d.a, y, y)) + dot4(d.b, y);
}

template <class G, class W>
double wind_norm_direct(const NavigationData<G, W>& nav, const Point4& x) {
  const Mat4<double> g = nav.metric(x);
  const Vec4<double> v = nav.wind(x);
  return quad_form4(g, v, v);
}

// Printed closed form for |V_r|^2_{g_a}: mu r^2 |x|^2 with mu = 1/(a|x|^2+1).
// Kept verbatim as a cross-check target, never as a trusted code path.
inline double wind_norm_closed_vr(double a, double r, const Point4& x) {
  const double r2 = dot4(x, x);
  return r * r * r2 / (a * r2 + 1.0);
}

// Printed closed form for |U_s|^2_{g_a} (machine-verified elsewhere):
//   mu s^2 { (1 + 8 a^2 P) |x|^2 + 2a |x|_4^4 + a^2 |x|_6^6 + 16 a P + f(x) },
// with P the product of the four coordinates, |x|_k the k-norm, and f the
// displayed quartic/sextic correction, transcribed term for term.
inline double wind_norm_closed_us(double a, double s, const Point4& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  const double sq1 = x1 * x1, sq2 = x2 * x2, sq3 = x3 * x3, sq4 = x4 * x4;
  const double r2 = sq1 + sq2 + sq3 + sq4;
  const double mu = 1.0 / (a * r2 + 1.0);
  const double prod = x1 * x2 * x3 * x4;
  const double n4 = sq1 * sq1 + sq2 * sq2 + sq3 * sq3 + sq4 * sq4;
  const double n6 = sq1 * sq1 * sq1 + sq2 * sq2 * sq2 + sq3 * sq3 * sq3 +
                    sq4 * sq4 * sq4;

  double f = 0.0;
  f += -a * a *
       (sq1 * sq4 * sq4 + sq2 * sq2 * sq3 + sq2 * sq3 * sq3 + sq1 * sq1 * sq4);
  f += 3.0 * a * a *
       (sq1 * sq2 * sq2 + sq4 * sq2 * sq2 + sq1 * sq3 * sq3 + sq3 * sq4 * sq4 +
        sq3 * sq3 * sq4 + sq1 * sq1 * sq2 + sq2 * sq4 * sq4 + sq3 * sq1 * sq1);
  f += 4.0 * a *
       (sq1 * sq3 - sq2 * sq3 + sq2 * sq1 + sq4 * sq3 - sq4 * sq1 + sq4 * sq2);
  f += 2.0 * a * a *
       (sq1 * sq3 * sq4 + sq2 * sq3 * sq4 + sq1 * sq2 * sq3 + sq1 * sq2 * sq4);

  const double braces =
      (1.0 + 8.0 * a * a * prod) * r2 + 2.0 * a * n4 + a * a * n6 +
      16.0 * a * prod + f;
  return mu * s * s * braces;
}

struct DomainSpec {
  enum class Kind { kBallRadius, kWholeSpace, kImplicitNorm };
  Kind kind = Kind::kImplicitNorm;
  double radius = 0.0;

  static DomainSpec ball(double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::invalid_argument("DomainSpec: ball radius must be positive");
    return {Kind::kBallRadius, radius};
  }
  static DomainSpec whole_space() { return {Kind::kWholeSpace, 0.0}; }
  static DomainSpec implicit_norm() { return {Kind::kImplicitNorm, 0.0}; }
};

// The printed domain for the r-rotation wind: the ball |x| < 1/sqrt(r^2 - a)
// when r^2 > a, all of R^4 otherwise.
inline DomainSpec vr_printed_domain(double a, double r) {
  if (r * r > a) return DomainSpec::ball(1.0 / std::sqrt(r * r - a));
  return DomainSpec::whole_space();
}

template <class G, class W>
bool domain_contains(const DomainSpec& spec, const NavigationData<G, W>& nav,
                     const Point4& x) {
  switch (spec.kind) {
    case DomainSpec::Kind::kBallRadius:
      return norm4(x) < spec.radius;
    case DomainSpec::Kind::kWholeSpace:
      return true;
    case DomainSpec::Kind::kImplicitNorm:
    default:
      return wind_norm_direct(nav, x) < 1.0;
  }
}

}  // namespace tnlab
