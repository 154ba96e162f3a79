#include "tnlab/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tnlab/calibration.hpp"
#include "tnlab/curvature.hpp"
#include "tnlab/errors.hpp"
#include "tnlab/finsler.hpp"
#include "tnlab/killing.hpp"
#include "tnlab/metrics.hpp"
#include "tnlab/report.hpp"
#include "tnlab/sampling.hpp"
#include "tnlab/zermelo.hpp"

namespace tnlab {
namespace {

const std::set<std::string> kKnownTols = {
    "ricci",    "nonflat_floor", "dual_form",          "pattern",
    "translation", "einstein",   "c_zero",             "k_zero",
    "nonconstancy_floor",        "agreement",          "flat_spread"};

struct RunConfig {
  double a = 1.0, m = 1.0, n = 1.0, r = 1.0, s = 0.25;
  std::uint64_t seed = 7;
  int samples = -1;  // -1 = per-command default
  std::map<std::string, double> tol;
  std::string out, csv;
  std::string field = "vr";
  bool flat = false;

  double tolerance(const std::string& name, double fallback) const {
    const auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
  }

  Json echo() const {
    Json j;
    j["a"] = a;
    j["m"] = m;
    j["n"] = n;
    j["r"] = r;
    j["s"] = s;
    j["seed"] = seed;
    j["samples"] = samples;
    j["field"] = field;
    j["flat"] = flat;
    Json jt = Json::object();
    for (const auto& [k, v] : tol) jt[k] = v;
    j["tol"] = jt;
    j["out"] = out;
    j["csv"] = csv;
    return j;
  }
};

struct ConstWind {
  Vec4<double> v{};
  template <class S>
  Vec4<S> operator()(const Vec4<S>&) const {
    return Vec4<S>{S(v[0]), S(v[1]), S(v[2]), S(v[3])};
  }
};

void require_positive_a(const RunConfig& c) {
  if (!(c.a > 0.0)) throw ConfigError("this command requires --a > 0");
}

int resolve_samples(const RunConfig& c, int fallback) {
  if (c.samples == -1) return fallback;
  if (c.samples < 1) throw ConfigError("--samples must be >= 1");
  return c.samples;
}

NavigationData<TaubNutMetric, LinearVectorField> field_nav(const RunConfig& c) {
  TaubNutKillingParams p;
  if (c.field == "vr")
    p = vr_params(c.r);
  else if (c.field == "us")
    p = us_params(c.s);
  else if (c.field == "wmn")
    p = wmn_params(c.m, c.n);
  else
    throw ConfigError("unknown --field: " + c.field);
  return {TaubNutMetric(c.a), build_field(p)};
}

double nonconstancy_floor(const RunConfig& c) {
  const double fallback = c.field == "vr"   ? kVrFlagSpreadFloor
                          : c.field == "us" ? kUsFlagSpreadFloor
                                            : kWmnFlagSpreadFloor;
  return c.tolerance("nonconstancy_floor", fallback);
}

Json point_json(const Point4& x) {
  return Json::array({x[0], x[1], x[2], x[3]});
}

Report cmd_verify_ricci_flat(RunConfig c) {
  require_positive_a(c);
  c.samples = resolve_samples(c, 100);
  Report rep("verify-ricci-flat", c.echo());

  const TaubNutMetric table(c.a);
  const TaubNutClosedForm closed{c.a};
  SeededRng rng(c.seed);

  double ricci_max = 0.0, riemann_max = 0.0, dual_max = 0.0;
  for (int i = 0; i < c.samples; ++i) {
    const Point4 x = sample_ball(rng, 2.0);
    const CurvatureReport r = curvature_report(table, x);
    ricci_max = std::max(ricci_max, r.ricci_max_abs);
    riemann_max = std::max(riemann_max, r.riemann_max_abs);
    const Mat4<double> g1 = table(x);
    const Mat4<double> g2 = closed(x);
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q)
        dual_max = std::max(dual_max, std::abs(g1[p][q] - g2[p][q]));
  }

  rep.add_check("ricci_max", ricci_max, c.tolerance("ricci", 1e-8),
                CheckKind::kLess);
  rep.add_check("riemann_max", riemann_max, c.tolerance("nonflat_floor", 1e-3),
                CheckKind::kGreater);
  rep.add_check("dual_form_max", dual_max, c.tolerance("dual_form", 1e-12),
                CheckKind::kLess);
  return rep;
}

Report cmd_classify_killing(RunConfig c) {
  c.samples = resolve_samples(c, 20);
  if (c.samples < 10)
    throw ConfigError("classify-killing needs --samples >= 10 to pin the "
                      "10-coefficient system");
  if (!c.flat) require_positive_a(c);
  Report rep("classify-killing", c.echo());

  SeededRng rng(c.seed);
  const auto pts = sample_ball_points(rng, c.samples, 2.0);
  const std::uint64_t augment = c.seed ^ kClassifyAugmentSeed;
  const KillingClassification result =
      c.flat ? classify_killing(FlatMetric{}, pts, augment)
             : classify_killing(TaubNutMetric(c.a), pts, augment);

  rep.add_check("solution_dimension", result.dimension(), c.flat ? 10.0 : 4.0,
                CheckKind::kEquals);
  if (!c.flat) {
    rep.add_check("pattern_residual", result.pattern_residual(),
                  c.tolerance("pattern", 1e-9), CheckKind::kLess);
    rep.add_check("translation_max", result.translation_max(),
                  c.tolerance("translation", 1e-9), CheckKind::kLess);
  }
  return rep;
}

Report cmd_verify_einstein(RunConfig c) {
  require_positive_a(c);
  c.samples = resolve_samples(c, 20);
  Report rep("verify-einstein", c.echo());

  const auto nav = field_nav(c);
  const auto randers = make_randers(nav);
  SeededRng rng(c.seed);

  const auto pairs = sample_einstein_pairs(nav, c.samples, rng);
  if (pairs.empty()) {
    rep.add_check("admissible_points", 0.0, 0.5, CheckKind::kGreater,
                  /*finding_only=*/true);
    rep.add_finding("empty_domain",
                    Json{{"note", "no sampled point keeps the direct wind norm "
                                  "below the 0.95 margin"},
                         {"attempted", c.samples}});
    return rep;
  }
  if (static_cast<int>(pairs.size()) < c.samples)
    rep.add_finding("reduced_sample",
                    Json{{"requested", c.samples},
                         {"admissible", pairs.size()}});

  const EinsteinReport er = einstein_check(randers, nav, pairs);
  rep.add_check("einstein_residual_rel", er.max_residual_rel,
                c.tolerance("einstein", 1e-6), CheckKind::kLess);
  rep.add_check("homothety_c_abs", std::abs(er.c), c.tolerance("c_zero", 1e-9),
                CheckKind::kLess);
  rep.add_check("einstein_k_abs", std::abs(er.k), c.tolerance("k_zero", 1e-7),
                CheckKind::kLess);

  const auto flags = sample_flags(randers, nav, 100, rng);
  const ConstancyScan scan = constancy_scan(randers, flags);
  rep.add_check("flag_spread", scan.spread, nonconstancy_floor(c),
                CheckKind::kGreater);
  return rep;
}

Report cmd_crosscheck_norms(RunConfig c) {
  require_positive_a(c);
  c.samples = resolve_samples(c, 1000);
  Report rep("crosscheck-norms", c.echo());

  SeededRng rng(c.seed);
  std::vector<Point4> pts;
  pts.reserve(static_cast<std::size_t>(c.samples));
  pts.push_back(Point4{1.0, 0.0, 0.0, 0.0});  // canonical probe point
  for (int i = 1; i < c.samples; ++i) pts.push_back(sample_ball(rng, 2.0));

  const double tol = c.tolerance("agreement", 1e-10);

  const auto compare = [&](const std::string& name, const auto& nav,
                           const auto& closed_fn) {
    double worst = -1.0;
    Point4 worst_x{};
    double closed_at = 0.0, direct_at = 0.0;
    for (const Point4& x : pts) {
      const double direct = wind_norm_direct(nav, x);
      const double closed = closed_fn(x);
      const double diff = std::abs(direct - closed);
      if (diff > worst) {
        worst = diff;
        worst_x = x;
        closed_at = closed;
        direct_at = direct;
      }
    }
    rep.add_check(name, worst, tol, CheckKind::kLess, /*finding_only=*/true);
    if (!(worst < tol))
      rep.add_finding(name, Json{{"worst_point", point_json(worst_x)},
                                 {"closed", closed_at},
                                 {"direct", direct_at},
                                 {"max_abs_diff", worst}});
  };

  const NavigationData<TaubNutMetric, LinearVectorField> vr{
      TaubNutMetric(c.a), build_field(vr_params(c.r))};
  compare("vr_closed_vs_direct", vr,
          [&](const Point4& x) { return wind_norm_closed_vr(c.a, c.r, x); });

  const NavigationData<TaubNutMetric, LinearVectorField> us{
      TaubNutMetric(c.a), build_field(us_params(c.s))};
  compare("us_closed_vs_direct", us,
          [&](const Point4& x) { return wind_norm_closed_us(c.a, c.s, x); });

  // the printed radial profile mu r^2 |x|^2 against the Hopf-dual wind
  const NavigationData<TaubNutMetric, LinearVectorField> dual{
      TaubNutMetric(c.a), hopf_dual_field(c.r)};
  compare("omega_dual_vs_pattern", dual,
          [&](const Point4& x) { return wind_norm_closed_vr(c.a, c.r, x); });

  return rep;
}

Report cmd_scan_flag_curvature(RunConfig c) {
  c.samples = resolve_samples(c, 100);
  if (c.csv.empty())
    throw ConfigError("scan-flag-curvature requires --csv PATH");
  if (!c.flat) require_positive_a(c);
  Report rep("scan-flag-curvature", c.echo());

  std::ofstream csv(c.csv, std::ios::binary);
  if (!csv) throw ConfigError("cannot open --csv path: " + c.csv);

  const auto scan_body = [&](const auto& nav) {
    const auto randers = make_randers(nav);
    SeededRng rng(c.seed);
    const auto flags = sample_flags(randers, nav, c.samples, rng);

    CsvWriter w(csv);
    const std::vector<std::string> header = {"x1", "x2", "x3", "x4", "y1",
                                             "y2", "y3", "y4", "u1", "u2",
                                             "u3", "u4", "K"};
    w.write_header(header);

    if (flags.empty()) {
      rep.add_check("flags_scanned", 0.0, 0.5, CheckKind::kGreater,
                    /*finding_only=*/true);
      rep.add_finding("empty_domain",
                      Json{{"note", "no admissible flags found"}});
      return;
    }
    if (static_cast<int>(flags.size()) < c.samples)
      rep.add_finding("reduced_sample", Json{{"requested", c.samples},
                                             {"scanned", flags.size()}});

    double kmin = 0.0, kmax = 0.0, max_abs_k = 0.0;
    bool any = false;
    for (const Flag& f : flags) {
      const double k = flag_curvature(randers, f);
      const double row[13] = {f.x[0], f.x[1], f.x[2], f.x[3], f.y[0], f.y[1],
                              f.y[2], f.y[3], f.u[0], f.u[1], f.u[2], f.u[3],
                              k};
      w.write_row(row);
      if (!any) {
        kmin = kmax = k;
        any = true;
      } else {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
      max_abs_k = std::max(max_abs_k, std::abs(k));
    }

    char buf[40];
    std::vector<std::string> summary(13);
    summary[0] = "summary";
    std::snprintf(buf, sizeof buf, "%.17g", kmin);
    summary[1] = buf;
    std::snprintf(buf, sizeof buf, "%.17g", kmax);
    summary[2] = buf;
    std::snprintf(buf, sizeof buf, "%.17g", kmax - kmin);
    summary[3] = buf;
    w.write_text_row(summary);

    if (c.flat)
      rep.add_check("flat_max_abs_k", max_abs_k,
                    c.tolerance("flat_spread", 1e-9), CheckKind::kLess);
    else
      rep.add_check("flag_spread", kmax - kmin, nonconstancy_floor(c),
                    CheckKind::kGreater);
  };

  if (c.flat) {
    const NavigationData<FlatMetric, ConstWind> nav{
        FlatMetric{}, ConstWind{{0.5, 0.0, 0.0, 0.0}}};
    scan_body(nav);
  } else {
    scan_body(field_nav(c));
  }
  return rep;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Numerical laboratory for the Taub-NUT metric family, its "
               "Killing fields, and the Randers metrics they generate"};
  app.name("tnlab");
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> tol_raw;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--a", cfg.a, "Taub-NUT parameter a (> 0)");
    sub->add_option("--m", cfg.m, "rotation parameter m");
    sub->add_option("--n", cfg.n, "rotation parameter n");
    sub->add_option("--r", cfg.r, "rotation parameter r");
    sub->add_option("--s", cfg.s, "rotation parameter s");
    sub->add_option("--seed", cfg.seed, "RNG seed (mt19937_64)");
    sub->add_option("--samples", cfg.samples, "sample count");
    sub->add_option("--tol", tol_raw, "NAME=VALUE threshold override")
        ->take_all();
    sub->add_option("--out", cfg.out, "write the JSON report to this path");
    sub->add_option("--csv", cfg.csv, "write the CSV side file to this path");
  };

  CLI::App* ricci = app.add_subcommand(
      "verify-ricci-flat", "Ricci-flatness and non-flatness of g_a, plus the "
                           "two-form agreement check");
  add_common(ricci);

  CLI::App* classify = app.add_subcommand(
      "classify-killing", "re-derive the Killing solution space inside the "
                          "10-parameter affine family");
  add_common(classify);
  classify->add_flag("--flat", cfg.flat, "classify against g_0 instead");

  CLI::App* einstein = app.add_subcommand(
      "verify-einstein", "Einstein property and flag-curvature spread of the "
                         "navigation Randers metric");
  add_common(einstein);
  einstein->add_option("--field", cfg.field, "wind field: vr, us, or wmn")
      ->required()
      ->check(CLI::IsMember({"vr", "us", "wmn"}));

  CLI::App* cross = app.add_subcommand(
      "crosscheck-norms", "closed-form wind norms against direct contraction");
  add_common(cross);

  CLI::App* scan = app.add_subcommand(
      "scan-flag-curvature", "per-flag curvature table (CSV) with summary");
  add_common(scan);
  scan->add_option("--field", cfg.field, "wind field: vr, us, or wmn")
      ->check(CLI::IsMember({"vr", "us", "wmn"}));
  scan->add_flag("--flat", cfg.flat,
                 "diagnostic mode: flat sea with constant wind");

  std::vector<const char*> argv;
  argv.push_back("tnlab");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    for (const std::string& spec : tol_raw) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw ConfigError("--tol expects NAME=VALUE, got: " + spec);
      const std::string name = spec.substr(0, eq);
      if (!kKnownTols.count(name))
        throw ConfigError("unknown tolerance name: " + name);
      std::size_t used = 0;
      const double value = std::stod(spec.substr(eq + 1), &used);
      if (used != spec.size() - eq - 1)
        throw ConfigError("bad tolerance value in: " + spec);
      cfg.tol[name] = value;
    }

    Report rep = [&]() {
      if (ricci->parsed()) return cmd_verify_ricci_flat(cfg);
      if (classify->parsed()) return cmd_classify_killing(cfg);
      if (einstein->parsed()) return cmd_verify_einstein(cfg);
      if (cross->parsed()) return cmd_crosscheck_norms(cfg);
      return cmd_scan_flag_curvature(cfg);
    }();

    rep.set_duration_ms(std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count());

    const std::string text = rep.to_string();
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot open --out path: " + cfg.out);
      f << text;
    } else {
      out << text;
    }
    return rep.exit_code();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const UnderdeterminedSamplingError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tnlab
