#pragma once

#include "tnlab/linalg.hpp"

namespace tnlab {

// X^i(x) = Q^i_j x^j + C^i.  Covers translations, rotations, dilations and
// every Killing field this project needs; the Jacobian is exactly Q.
struct LinearVectorField {
  Mat4<double> q{};
  Vec4<double> c{};

  template <class S>
  Vec4<S> operator()(const Vec4<S>& x) const {
    Vec4<S> out;
    for (int i = 0; i < 4; ++i) {
      S acc = S(c[i]);
      for (int j = 0; j < 4; ++j) acc = acc + q[i][j] * x[j];
      out[i] = acc;
    }
    return out;
  }
};

inline LinearVectorField translation_field(const Vec4<double>& c) {
  return LinearVectorField{{}, c};
}

inline LinearVectorField coordinate_field(int i) {
  Vec4<double> c{};
  c[i] = 1.0;
  return LinearVectorField{{}, c};
}

// k * x^i d/dx^i
inline LinearVectorField dilation_field(double k) {
  LinearVectorField f;
  for (int i = 0; i < 4; ++i) f.q[i][i] = k;
  return f;
}

// omega = -x^2 dx^1 + x^1 dx^2 - x^4 dx^3 + x^3 dx^4.  Its pointwise flat
// norm equals |x|.
struct HopfForm {
  template <class S>
  Vec4<S> operator()(const Vec4<S>& x) const {
    return Vec4<S>{-x[1], x[0], -x[3], x[2]};
  }
};

// Flat-metric dual of scale * omega: (-x^2, x^1, -x^4, x^3) componentwise.
inline LinearVectorField hopf_dual_field(double scale) {
  LinearVectorField f;
  f.q[0][1] = -scale;
  f.q[1][0] = scale;
  f.q[2][3] = -scale;
  f.q[3][2] = scale;
  return f;
}

}  // namespace tnlab
