#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tnlab/fields.hpp"
#include "tnlab/killing.hpp"
#include "tnlab/metrics.hpp"
#include "tnlab/sampling.hpp"
#include "tnlab/zermelo.hpp"

using namespace tnlab;

namespace {

// arbitrary constant SPD metric field for round-trip property tests
struct ConstMetric {
  Mat4<double> g;
  template <class S>
  Mat4<S> operator()(const Vec4<S>&) const {
    Mat4<S> out{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i][j] = S(g[i][j]);
    return out;
  }
};

struct ConstWind {
  Vec4<double> v;
  template <class S>
  Vec4<S> operator()(const Vec4<S>&) const {
    return Vec4<S>{S(v[0]), S(v[1]), S(v[2]), S(v[3])};
  }
};

}  // namespace

TEST_CASE("navigation to Randers conversion") {
  SUBCASE("zero wind is the identity conversion") {
    NavigationData<TaubNutMetric, ConstWind> nav{TaubNutMetric(1.0), ConstWind{{}}};
    const Point4 x = {0.4, -0.2, 0.8, 0.3};
    const auto rd = navigation_to_randers(nav, x);
    CHECK(max_abs_diff(rd.a, Sym4::from(nav.metric(x))) < 1e-15);
    for (int i = 0; i < 4; ++i) CHECK(rd.b[i] == 0.0);
  }

  SUBCASE("flat sea with wind (1/2, 0, 0, 0)") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{},
                                              ConstWind{{0.5, 0.0, 0.0, 0.0}}};
    const auto rd = navigation_to_randers(nav, Point4{0, 0, 0, 0});
    CHECK(rd.a(0, 0) == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
    CHECK(rd.a(1, 1) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(rd.a(2, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(rd.a(3, 3) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(rd.a(0, 1) == doctest::Approx(0.0));
    CHECK(rd.b[0] == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(is_positive_definite(rd.a));
    // |b|_a < 1
    const Sym4 ainv = invert_sym4(rd.a);
    CHECK(quad_form4(ainv.mat(), rd.b, rd.b) < 1.0);
  }

  SUBCASE("unit wind is rejected") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{},
                                              ConstWind{{1.0, 0.0, 0.0, 0.0}}};
    CHECK_THROWS_AS(navigation_to_randers(nav, Point4{0, 0, 0, 0}),
                    WindTooStrongError);
  }
}

TEST_CASE("inverse conversion") {
  SUBCASE("trivial data") {
    const auto nav = zermelo_inverse(Sym4::identity(), Vec4<double>{});
    CHECK(max_abs_diff(nav.g, Sym4::identity()) == 0.0);
    for (int i = 0; i < 4; ++i) CHECK(nav.wind[i] == 0.0);
  }

  SUBCASE("recovers the flat example") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{},
                                              ConstWind{{0.5, 0.0, 0.0, 0.0}}};
    const auto rd = navigation_to_randers(nav, Point4{0, 0, 0, 0});
    const auto back = zermelo_inverse(rd.a, rd.b);
    CHECK(max_abs_diff(back.g, Sym4::identity()) < 1e-12);
    CHECK(back.wind[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(back.wind[1]) < 1e-14);
  }

  SUBCASE("rejects |b|_a >= 1") {
    Vec4<double> b{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(zermelo_inverse(Sym4::identity(), b), InvalidRandersError);
  }

  SUBCASE("field-level inverse recovers the Taub-NUT navigation data") {
    const TaubNutMetric g(1.0);
    const auto wind = build_field(vr_params(1.0));
    NavigationData<TaubNutMetric, LinearVectorField> nav{g, wind};
    const auto randers = make_randers(nav);
    SeededRng rng(61);
    int done = 0;
    while (done < 20) {
      const Point4 x = sample_ball(rng, 2.0);
      if (wind_norm_direct(nav, x) >= 0.9) continue;
      const auto back = randers_to_navigation(randers, x);
      CHECK(max_abs_diff(back.g, Sym4::from(g(x))) < 1e-12);
      const Vec4<double> v = wind(x);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(back.wind[i] - v[i]) < 1e-12);
      ++done;
    }
  }
}

TEST_CASE("round trip on seeded triples") {
  SeededRng rng(7);
  int done = 0;
  while (done < 100) {
    // random SPD sea metric
    Mat4<double> m{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] = rng.uniform(-1.0, 1.0);
    Mat4<double> spd{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        for (int k = 0; k < 4; ++k) spd[i][j] += m[k][i] * m[k][j];
        if (i == j) spd[i][j] += 0.3;
      }
    // wind scaled to |V|_g <= 0.9
    Vec4<double> v;
    for (int i = 0; i < 4; ++i) v[i] = rng.uniform(-1.0, 1.0);
    const double norm = std::sqrt(quad_form4(spd, v, v));
    if (norm < 1e-6) continue;
    v = vec_scale4(v, rng.uniform(0.05, 0.9) / norm);

    NavigationData<ConstMetric, ConstWind> nav{ConstMetric{spd}, ConstWind{v}};
    const Point4 x{};
    const auto rd = navigation_to_randers(nav, x);
    const auto back = zermelo_inverse(rd.a, rd.b);

    CHECK(max_abs_diff(back.g, Sym4::from(spd)) < 1e-10);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(back.wind[i] - v[i]) < 1e-10);

    // and forward again: full round trip on (a, b)
    NavigationData<ConstMetric, ConstWind> nav2{ConstMetric{back.g.mat()},
                                                ConstWind{back.wind}};
    const auto rd2 = navigation_to_randers(nav2, x);
    CHECK(max_abs_diff(rd2.a, rd.a) < 1e-10);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(rd2.b[i] - rd.b[i]) < 1e-10);
    ++done;
  }
}

TEST_CASE("Randers length") {
  SUBCASE("Riemannian case is the Euclidean norm") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{}, ConstWind{{}}};
    const auto randers = make_randers(nav);
    CHECK(randers_value(randers, Point4{}, Vec4<double>{3.0, 4.0, 0.0, 0.0}) ==
          doctest::Approx(5.0).epsilon(1e-14));
  }

  SUBCASE("flat sea, wind (1/2,0,0,0), y = e1 gives 2/3") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{},
                                              ConstWind{{0.5, 0.0, 0.0, 0.0}}};
    const auto randers = make_randers(nav);
    const double f = randers_value(randers, Point4{}, Vec4<double>{1, 0, 0, 0});
    CHECK(f == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    // navigation identity: |y - F V|_g = F
    const Vec4<double> reached = {1.0 - f * 0.5, 0.0, 0.0, 0.0};
    CHECK(norm4(reached) == doctest::Approx(f).epsilon(1e-14));
  }

  SUBCASE("zero tangent vector is rejected") {
    NavigationData<FlatMetric, ConstWind> nav{FlatMetric{}, ConstWind{{}}};
    CHECK_THROWS_AS(randers_value(make_randers(nav), Point4{}, Vec4<double>{}),
                    ZeroFlagpoleError);
  }

  SUBCASE("positive 1-homogeneity") {
    const TaubNutMetric g(1.0);
    NavigationData<TaubNutMetric, LinearVectorField> nav{
        g, build_field(vr_params(1.0))};
    const auto randers = make_randers(nav);
    SeededRng rng(40);
    for (int t = 0; t < 25; ++t) {
      const Point4 x = sample_ball(rng, 0.6);
      const Vec4<double> y = sample_sphere(rng);
      const double f = randers_value(randers, x, y);
      CHECK(f > 0.0);
      CHECK(randers_value(randers, x, vec_scale4(y, 2.0)) ==
            doctest::Approx(2.0 * f).epsilon(1e-12));
    }
  }
}

TEST_CASE("navigation identity on seeded samples") {
  const TaubNutMetric g(1.0);
  const auto wind = build_field(vr_params(1.0));
  NavigationData<TaubNutMetric, LinearVectorField> nav{g, wind};
  const auto randers = make_randers(nav);

  SeededRng rng(7);
  int done = 0;
  while (done < 100) {
    const Point4 x = sample_ball(rng, 2.0);
    if (wind_norm_direct(nav, x) >= 0.9) continue;
    const Vec4<double> y = sample_sphere(rng);
    const double f = randers_value(randers, x, y);
    const Vec4<double> disp = vec_sub4(y, vec_scale4(wind(x), f));
    const double gnorm = std::sqrt(quad_form4(g(x), disp, disp));
    CHECK(std::abs(f - gnorm) < 1e-10);
    ++done;
  }
}

TEST_CASE("direct wind norms at pinned points") {
  SUBCASE("r-rotation at (1,0,0,0) with a = r = 1 gives 2") {
    NavigationData<TaubNutMetric, LinearVectorField> nav{
        TaubNutMetric(1.0), build_field(vr_params(1.0))};
    CHECK(wind_norm_direct(nav, Point4{1, 0, 0, 0}) ==
          doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("s-rotation at (1,1,1,-1) with a = s = 1 gives 4/5") {
    NavigationData<TaubNutMetric, LinearVectorField> nav{
        TaubNutMetric(1.0), build_field(us_params(1.0))};
    CHECK(wind_norm_direct(nav, Point4{1, 1, 1, -1}) ==
          doctest::Approx(0.8).epsilon(1e-13));
  }

  SUBCASE("zero wind") {
    NavigationData<TaubNutMetric, LinearVectorField> nav{
        TaubNutMetric(1.0), LinearVectorField{}};
    CHECK(wind_norm_direct(nav, Point4{1, 2, 0, -1}) == 0.0);
  }
}

TEST_CASE("closed form for the s-rotation norm") {
  SUBCASE("pinned values") {
    CHECK(wind_norm_closed_us(1.0, 1.0, Point4{0, 0, 0, 0}) == 0.0);
    CHECK(wind_norm_closed_us(1.0, 1.0, Point4{1, 0, 0, 0}) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(wind_norm_closed_us(1.0, 1.0, Point4{1, 1, 1, -1}) ==
          doctest::Approx(0.8).epsilon(1e-13));
  }

  SUBCASE("matches direct contraction at 1000 seeded points") {
    for (double a : {0.1, 1.0, 5.0}) {
      NavigationData<TaubNutMetric, LinearVectorField> nav{
          TaubNutMetric(a), build_field(us_params(1.0))};
      SeededRng rng(7);
      double worst = 0.0;
      for (int t = 0; t < 1000; ++t) {
        const Point4 x = sample_ball(rng, 2.0);
        worst = std::max(worst, std::abs(wind_norm_direct(nav, x) -
                                         wind_norm_closed_us(a, 1.0, x)));
      }
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("closed form for the r-rotation norm disagrees with direct contraction") {
  // the printed expression evaluates to 1/2 at (1,0,0,0) with a = r = 1,
  // while the direct contraction gives 2; the mismatch is reported, never
  // silently corrected
  CHECK(wind_norm_closed_vr(1.0, 1.0, Point4{1, 0, 0, 0}) ==
        doctest::Approx(0.5).epsilon(1e-15));
  NavigationData<TaubNutMetric, LinearVectorField> nav{
      TaubNutMetric(1.0), build_field(vr_params(1.0))};
  CHECK(wind_norm_direct(nav, Point4{1, 0, 0, 0}) ==
        doctest::Approx(2.0).epsilon(1e-14));

  // the same expression does match the Hopf-dual wind
  NavigationData<TaubNutMetric, LinearVectorField> dual{TaubNutMetric(1.0),
                                                        hopf_dual_field(1.0)};
  SeededRng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const Point4 x = sample_ball(rng, 2.0);
    worst = std::max(worst, std::abs(wind_norm_direct(dual, x) -
                                     wind_norm_closed_vr(1.0, 1.0, x)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("wind norm along a ray stays finite and continuous") {
  NavigationData<TaubNutMetric, LinearVectorField> nav{
      TaubNutMetric(1.0), build_field(vr_params(1.0))};
  const Vec4<double> dir = {0.5, 0.5, -0.5, 0.5};
  double prev = 0.0;
  for (int k = 0; k <= 300; ++k) {
    const double t = 3.0 * k / 300.0;
    const double w = wind_norm_direct(nav, vec_scale4(dir, t));
    CHECK(std::isfinite(w));
    if (k > 0) CHECK(std::abs(w - prev) < 0.05 * (1.0 + w + prev));
    prev = w;
  }
}

TEST_CASE("domain predicates") {
  NavigationData<TaubNutMetric, LinearVectorField> nav{
      TaubNutMetric(1.0), build_field(vr_params(2.0))};

  SUBCASE("printed ball for r^2 > a") {
    const DomainSpec spec = vr_printed_domain(1.0, 2.0);
    CHECK(spec.kind == DomainSpec::Kind::kBallRadius);
    CHECK(spec.radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(domain_contains(spec, nav, Point4{0.5, 0, 0, 0}));
    CHECK_FALSE(domain_contains(spec, nav, Point4{0.6, 0, 0, 0}));
  }

  SUBCASE("whole space for r^2 <= a") {
    const DomainSpec spec = vr_printed_domain(1.0, 1.0);
    CHECK(spec.kind == DomainSpec::Kind::kWholeSpace);
    CHECK(domain_contains(spec, nav, Point4{100.0, -3.0, 2.0, 5.0}));
  }

  SUBCASE("implicit norm domain uses the direct contraction") {
    NavigationData<TaubNutMetric, LinearVectorField> strong{
        TaubNutMetric(1.0), build_field(us_params(100.0))};
    const DomainSpec spec = DomainSpec::implicit_norm();
    CHECK_FALSE(domain_contains(spec, strong, Point4{1, 1, 1, -1}));
    CHECK(domain_contains(spec, strong, Point4{0.001, 0, 0, 0}));
  }
}
