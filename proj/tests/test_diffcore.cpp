#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "support/test_fields.hpp"
#include "tnlab/deriv.hpp"
#include "tnlab/jet.hpp"
#include "tnlab/linalg.hpp"
#include "tnlab/metrics.hpp"
#include "tnlab/sampling.hpp"

using namespace tnlab;

namespace {

// Independent polynomial oracle: explicit monomial list, differentiated by
// exponent bookkeeping rather than jets.
struct Poly4 {
  struct Term {
    double coeff;
    std::array<int, 4> exp;
  };
  std::vector<Term> terms;

  double eval(const std::array<double, 4>& x) const {
    double s = 0.0;
    for (const auto& t : terms) {
      double m = t.coeff;
      for (int v = 0; v < 4; ++v)
        for (int k = 0; k < t.exp[v]; ++k) m *= x[v];
      s += m;
    }
    return s;
  }

  Poly4 d(int var) const {
    Poly4 out;
    for (const auto& t : terms) {
      if (t.exp[var] == 0) continue;
      Term dt = t;
      dt.coeff *= t.exp[var];
      dt.exp[var] -= 1;
      out.terms.push_back(dt);
    }
    return out;
  }

  template <class S>
  S operator()(const std::array<S, 4>& x) const {
    S s{};
    for (const auto& t : terms) {
      S m = S(t.coeff);
      for (int v = 0; v < 4; ++v)
        for (int k = 0; k < t.exp[v]; ++k) m = m * x[v];
      s = s + m;
    }
    return s;
  }
};

Poly4 random_poly(SeededRng& rng, int max_degree) {
  Poly4 p;
  const int nterms = 3 + static_cast<int>(rng.uniform(0.0, 5.0));
  for (int t = 0; t < nterms; ++t) {
    Poly4::Term term;
    term.coeff = rng.uniform(-2.0, 2.0);
    int budget = max_degree;
    for (int v = 0; v < 4; ++v) {
      const int e = static_cast<int>(rng.uniform(0.0, budget + 1.0));
      term.exp[v] = std::min(e, budget);
      budget -= term.exp[v];
    }
    p.terms.push_back(term);
  }
  return p;
}

const auto norm2_field = [](const auto& x) {
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
};

}  // namespace

TEST_CASE("jet derivative of |x|^2") {
  const std::array<double, 4> x = {1.0, 0.0, 0.0, 0.0};
  const auto grad = differentiate<4>(norm2_field, x, 1);
  CHECK(grad.at1(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(grad.at1(1) == 0.0);
  CHECK(grad.at1(2) == 0.0);
  CHECK(grad.at1(3) == 0.0);

  const std::array<double, 4> y = {0.3, -1.2, 0.7, 2.0};
  const auto third = differentiate<4>(norm2_field, y, 3);
  CHECK(third.max_abs() == 0.0);  // exactly zero, not approximately
}

TEST_CASE("jet second derivatives of B(x) = a|x|^2 + 1") {
  const double a = 1.0;
  const auto b_field = [&](const auto& x) {
    return a * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) + 1.0;
  };
  const std::array<double, 4> x = {1.0, 1.0, 0.0, 0.0};
  const auto hess = differentiate<4>(b_field, x, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(hess.at2(i, j) == doctest::Approx(i == j ? 2.0 : 0.0).epsilon(1e-14));
}

TEST_CASE("differentiate rejects order > 3 and order < 1") {
  const std::array<double, 4> x{};
  CHECK_THROWS_AS(differentiate<4>(norm2_field, x, 4), std::invalid_argument);
  CHECK_THROWS_AS(differentiate<4>(norm2_field, x, 0), std::invalid_argument);
}

TEST_CASE("derivative of a constant field is exactly zero") {
  const auto cfield = [](const auto& x) {
    using S = std::decay_t<decltype(x[0])>;
    (void)x;
    return S(3.25);
  };
  const std::array<double, 4> x = {0.4, -0.9, 1.3, 0.2};
  for (int order = 1; order <= 3; ++order)
    CHECK(differentiate<4>(cfield, x, order).max_abs() == 0.0);
  CHECK(finite_difference_check<4>(cfield, x, 1, 1e-5) <= 1e-15);
  CHECK(finite_difference_check<4>(cfield, x, 2, 1e-5) <= 1e-15);
}

TEST_CASE("polynomial fields: jets match analytic derivatives") {
  SeededRng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly4 p = random_poly(rng, 4);
    std::array<double, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-1.5, 1.5);

    const auto g1 = differentiate<4>(p, x, 1);
    const auto g2 = differentiate<4>(p, x, 2);
    const auto g3 = differentiate<4>(p, x, 3);

    double scale = 1.0;
    for (const auto& t : p.terms) scale += std::abs(t.coeff);
    for (int i = 0; i < 4; ++i) {
      const Poly4 pi = p.d(i);
      CHECK(std::abs(g1.at1(i) - pi.eval(x)) < 1e-12 * scale * 16);
      for (int j = 0; j < 4; ++j) {
        const Poly4 pij = pi.d(j);
        CHECK(std::abs(g2.at2(i, j) - pij.eval(x)) < 1e-12 * scale * 64);
        for (int k = 0; k < 4; ++k)
          CHECK(std::abs(g3.at3(i, j, k) - pij.d(k).eval(x)) < 1e-12 * scale * 64);
      }
    }
  }
}

TEST_CASE("jet coefficient symmetry holds exactly") {
  using J = Jet<double, 4, 3>;
  std::array<J, 4> xs;
  const std::array<double, 4> x = {0.7, -0.4, 1.1, 0.25};
  for (int i = 0; i < 4; ++i) xs[i] = J::variable(x[i], i);
  // sqrt and division stress the composition path
  const J w = sqrt(norm2_field(xs) + 1.0) / (xs[0] + 2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(w.second(i, j) == w.second(j, i));
      for (int k = 0; k < 4; ++k) {
        CHECK(w.third(i, j, k) == w.third(j, i, k));
        CHECK(w.third(i, j, k) == w.third(k, j, i));
      }
    }
}

TEST_CASE("jets over 8 variables") {
  const auto f = [](const auto& z) {
    // mixes the two variable blocks: (x . y)^2 / (1 + |x|^2)
    auto dot = z[0] * z[4] + z[1] * z[5] + z[2] * z[6] + z[3] * z[7];
    auto n2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
    return dot * dot / (1.0 + n2);
  };
  std::array<double, 8> z;
  SeededRng rng(11);
  for (int i = 0; i < 8; ++i) z[i] = rng.uniform(-1.0, 1.0);
  CHECK(finite_difference_check<8>(f, z, 1, 1e-5) < 1e-8);
  CHECK(finite_difference_check<8>(f, z, 2, 1e-5) < 1e-4);
}

TEST_CASE("finite differences cross-check the exact path") {
  const std::array<double, 4> x = {1.0, 0.0, 0.0, 0.0};
  CHECK(finite_difference_check<4>(norm2_field, x, 1, 1e-5) < 1e-9);

  const TaubNutMetric g(1.0);
  const auto g11 = [&](const auto& p) { return g(p)[0][0]; };
  CHECK(finite_difference_check<4>(g11, x, 1, 1e-5) < 1e-6);
}

TEST_CASE("finite differences: every Taub-NUT component at sampled points") {
  for (double a : {0.1, 1.0, 5.0}) {
    const TaubNutMetric table(a);
    const TaubNutClosedForm closed{a};
    SeededRng rng(7);
    const auto pts = sample_ball_points(rng, 100, 2.0);
    double worst1 = 0.0, worst2 = 0.0;
    for (const auto& x : pts) {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          const auto comp = [&](const auto& p) { return table(p)[i][j]; };
          const auto comp2 = [&](const auto& p) { return closed(p)[i][j]; };
          worst1 = std::max(worst1, finite_difference_check<4>(comp, x, 1, 1e-5));
          worst2 = std::max(worst2, finite_difference_check<4>(comp, x, 2, 1e-5));
          worst1 = std::max(worst1, finite_difference_check<4>(comp2, x, 1, 1e-5));
          worst2 = std::max(worst2, finite_difference_check<4>(comp2, x, 2, 1e-5));
        }
    }
    CHECK(worst1 < 1e-5);
    CHECK(worst2 < 1e-3);
  }
}

TEST_CASE("finite differences: fibered-ansatz components on their chart") {
  GibbonsHawkingData<tnlab_test::HeightU, tnlab_test::ShearOneForm> data{
      tnlab_test::HeightU{}, tnlab_test::ShearOneForm{},
      Box3{{-1.0, -1.0, 1.0}, {1.0, 1.0, 2.0}}};
  const auto g = gibbons_hawking_metric(data);

  SeededRng rng(7);
  double worst1 = 0.0, worst2 = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::array<double, 4> x = {rng.uniform(-0.9, 0.9),
                                     rng.uniform(-0.9, 0.9),
                                     rng.uniform(1.05, 1.95),
                                     rng.uniform(-1.0, 1.0)};
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        const auto comp = [&](const auto& p) { return g(p)[i][j]; };
        worst1 = std::max(worst1, finite_difference_check<4>(comp, x, 1, 1e-5));
        worst2 = std::max(worst2, finite_difference_check<4>(comp, x, 2, 1e-5));
      }
  }
  CHECK(worst1 < 1e-5);
  CHECK(worst2 < 1e-3);
}

TEST_CASE("third-order finite differences on a cubic") {
  const auto f = [](const auto& x) {
    return x[0] * x[0] * x[0] + 2.0 * x[0] * x[1] * x[2] - x[3] * x[3] * x[1];
  };
  const std::array<double, 4> x = {0.5, -0.3, 0.8, 1.1};
  // order-3 stencils need a coarser step to stay above roundoff
  CHECK(finite_difference_check<4>(f, x, 3, 1e-2) < 1e-8);
  CHECK_THROWS_AS(finite_difference_check<4>(f, x, 1, 0.0), std::invalid_argument);
}

TEST_CASE("invert_sym4 basics") {
  CHECK(max_abs_diff(invert_sym4(Sym4::identity()), Sym4::identity()) == 0.0);

  Sym4 d;
  d.set(0, 0, 2.0);
  d.set(1, 1, 0.5);
  d.set(2, 2, 2.0);
  d.set(3, 3, 2.0);
  const Sym4 di = invert_sym4(d);
  CHECK(di(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(di(1, 1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(di(2, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(di(3, 3) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("invert_sym4 against the Taub-NUT form") {
  const TaubNutMetric g(1.0);
  const Point4 x = {1.0, 1.0, 1.0, -1.0};
  const Sym4 gx = Sym4::from(g(x));
  const Sym4 inv = invert_sym4(gx);
  const Mat4<double> prod = mat_mul4(gx.mat(), inv.mat());
  double dev = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dev = std::max(dev, std::abs(prod[i][j] - (i == j ? 1.0 : 0.0)));
  CHECK(dev < 1e-12);
  CHECK(is_positive_definite(gx));
}

TEST_CASE("invert_sym4 twice returns the input") {
  SeededRng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    Mat4<double> m{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = rng.uniform(-1.0, 1.0);
    Mat4<double> spd{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) spd[i][j] += m[k][i] * m[k][j];
        if (i == j) spd[i][j] += 0.5;
      }
    const Sym4 s = Sym4::from(spd);
    CHECK(max_abs_diff(invert_sym4(invert_sym4(s)), s) < 1e-10);
  }
}

TEST_CASE("invert_sym4 signals near-singular input") {
  Sym4 s = Sym4::identity();
  s.set(3, 3, 1e-14);
  CHECK_THROWS_AS(invert_sym4(s), SingularMatrixError);
}

TEST_CASE("nullspace basics") {
  SUBCASE("zero matrix") {
    const MatrixXd z(4, 4);
    const auto basis = nullspace(z);
    CHECK(basis.size() == 4);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        double d = 0.0;
        for (int k = 0; k < 4; ++k) d += basis[i][k] * basis[j][k];
        CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
      }
  }
  SUBCASE("identity") {
    MatrixXd id(4, 4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1.0;
    CHECK(nullspace(id).empty());
  }
  SUBCASE("rank-1 2x2") {
    MatrixXd m(2, 2);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = 1.0;
    const auto basis = nullspace(m);
    REQUIRE(basis.size() == 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double overlap = basis[0][0] * inv_sqrt2 - basis[0][1] * inv_sqrt2;
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-12);
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(nullspace(MatrixXd(65, 10)), std::invalid_argument);
  }
}

TEST_CASE("nullspace dimension is invariant under row permutation") {
  SeededRng rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 12, n = 8, rank = 3 + trial % 4;
    MatrixXd a(m, n);
    std::vector<double> left(m * rank), right(rank * n);
    for (auto& v : left) v = rng.uniform(-1.0, 1.0);
    for (auto& v : right) v = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < rank; ++k) s += left[i * rank + k] * right[k * n + j];
        a.at(i, j) = s;
      }

    const auto base = nullspace(a);
    CHECK(static_cast<int>(base.size()) == n - rank);

    // residual contract
    for (const auto& v : base) {
      for (int i = 0; i < m; ++i) {
        double r = 0.0;
        for (int j = 0; j < n; ++j) r += a.at(i, j) * v[j];
        CHECK(std::abs(r) < 1e-9);
      }
    }

    MatrixXd perm(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) perm.at((i * 5 + 3) % m, j) = a.at(i, j);
    CHECK(nullspace(perm).size() == base.size());
  }
}
