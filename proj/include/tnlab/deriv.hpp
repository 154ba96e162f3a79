#pragma once

// differentiate(): exact partial-derivative tensors of smooth scalar fields
// over 4 or 8 declared variables, through jet evaluation.
// finite_difference_check(): central-difference deviation, kept strictly as a
// cross-validation oracle for the exact path.

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "tnlab/jet.hpp"

namespace tnlab {

template <int NV>
class DerivTensor {
 public:
  explicit DerivTensor(int order) : order_(order) {
    std::size_t size = 1;
    for (int k = 0; k < order; ++k) size *= NV;
    v_.assign(size, 0.0);
  }

  int order() const { return order_; }

  double& at1(int i) { return v_[static_cast<std::size_t>(i)]; }
  double& at2(int i, int j) { return v_[static_cast<std::size_t>(i) * NV + j]; }
  double& at3(int i, int j, int k) {
    return v_[(static_cast<std::size_t>(i) * NV + j) * NV + k];
  }
  double at1(int i) const { return v_[static_cast<std::size_t>(i)]; }
  double at2(int i, int j) const { return v_[static_cast<std::size_t>(i) * NV + j]; }
  double at3(int i, int j, int k) const {
    return v_[(static_cast<std::size_t>(i) * NV + j) * NV + k];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  double max_abs_diff(const DerivTensor& o) const {
    double m = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      m = std::max(m, std::abs(v_[i] - o.v_[i]));
    return m;
  }

 private:
  int order_;
  std::vector<double> v_;
};

template <int NV, class F>
DerivTensor<NV> differentiate(const F& field, const std::array<double, NV>& x,
                              int order) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("differentiate: order must be 1, 2, or 3");
  DerivTensor<NV> out(order);
  if (order == 1) {
    using J = Jet<double, NV, 1>;
    std::array<J, NV> xs;
    for (int i = 0; i < NV; ++i) xs[i] = J::variable(x[i], i);
    const J w = field(xs);
    for (int i = 0; i < NV; ++i) out.at1(i) = w.first(i);
  } else if (order == 2) {
    using J = Jet<double, NV, 2>;
    std::array<J, NV> xs;
    for (int i = 0; i < NV; ++i) xs[i] = J::variable(x[i], i);
    const J w = field(xs);
    for (int i = 0; i < NV; ++i)
      for (int j = 0; j < NV; ++j) out.at2(i, j) = w.second(i, j);
  } else {
    using J = Jet<double, NV, 3>;
    std::array<J, NV> xs;
    for (int i = 0; i < NV; ++i) xs[i] = J::variable(x[i], i);
    const J w = field(xs);
    for (int i = 0; i < NV; ++i)
      for (int j = 0; j < NV; ++j)
        for (int k = 0; k < NV; ++k) out.at3(i, j, k) = w.third(i, j, k);
  }
  return out;
}

namespace detail {

template <int NV, class F>
double fd_partial(const F& f, std::array<double, NV> x,
                  std::span<const int> idx, double h) {
  if (idx.empty()) return f(x);
  const int i = idx.front();
  const auto rest = idx.subspan(1);
  std::array<double, NV> xp = x, xm = x;
  xp[i] += h;
  xm[i] -= h;
  return (fd_partial<NV>(f, xp, rest, h) - fd_partial<NV>(f, xm, rest, h)) /
         (2.0 * h);
}

}  // namespace detail

// Max absolute deviation between exact jet derivatives and nested central
// differences of the same order.
template <int NV, class F>
double finite_difference_check(const F& field, const std::array<double, NV>& x,
                               int order, double step) {
  if (!(step > 0.0))
    throw std::invalid_argument("finite_difference_check: step must be positive");
  const DerivTensor<NV> exact = differentiate<NV>(field, x, order);

  double dev = 0.0;
  if (order == 1) {
    for (int i = 0; i < NV; ++i) {
      const int idx[1] = {i};
      dev = std::max(dev, std::abs(detail::fd_partial<NV>(field, x, idx, step) -
                                   exact.at1(i)));
    }
  } else if (order == 2) {
    for (int i = 0; i < NV; ++i)
      for (int j = 0; j < NV; ++j) {
        const int idx[2] = {i, j};
        dev = std::max(dev, std::abs(detail::fd_partial<NV>(field, x, idx, step) -
                                     exact.at2(i, j)));
      }
  } else {
    for (int i = 0; i < NV; ++i)
      for (int j = 0; j < NV; ++j)
        for (int k = 0; k < NV; ++k) {
          const int idx[3] = {i, j, k};
          dev = std::max(dev, std::abs(detail::fd_partial<NV>(field, x, idx, step) -
                                       exact.at3(i, j, k)));
        }
  }
  return dev;
}

}  // namespace tnlab
