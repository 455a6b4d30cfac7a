// croft_forge: reproduce the constants, scan ε, fit the ε² coefficient,
// assemble the ansatz form, run the invariant checks and render SVGs.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "croft/ansatz.hpp"
#include "croft/io.hpp"
#include "croft/lattice.hpp"
#include "croft/svg.hpp"
#include "croft/tortoise.hpp"

namespace {

using namespace croft;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string q_spec;
  std::vector<double> eps;
  std::string eps_range;
  std::string mode = "exact2";
  std::string format = "csv";
  std::string out;
  std::vector<std::string> inject;
  std::vector<std::string> checks;
  std::string subject = "body";
  double step = 1e-3;
  double tol_scale = 1.0;
};

Family load(const RunConfig& cfg) {
  return cfg.q_spec.empty() ? reference_family() : io::load_family(cfg.q_spec);
}

Mode mode_of(const std::string& s) {
  const auto m = parse_mode(s);
  if (!m) throw UsageError("unknown mode '" + s + "' (expected series1, series2, exact1 or exact2)");
  return *m;
}

/// "a:b:step", inclusive of both ends.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(io::parse_double(item));
    } catch (const Error&) {
      throw UsageError("bad --eps-range '" + spec + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("--eps-range must be a:b:step with a <= b and step > 0");
  }
  const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= n; ++i) {
    grid.push_back(std::round((parts[0] + static_cast<double>(i) * parts[2]) * 1e12) / 1e12);
  }
  return grid;
}

std::vector<double> grid_of(const RunConfig& cfg, std::vector<double> fallback) {
  std::vector<double> grid = cfg.eps;
  if (!cfg.eps_range.empty()) {
    const auto r = parse_range(cfg.eps_range);
    grid.insert(grid.end(), r.begin(), r.end());
  }
  return grid.empty() ? fallback : grid;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(cfg.out, text);
  }
}

// ---- constants ------------------------------------------------------------

int cmd_constants(const RunConfig& cfg) {
  const auto& c = croft_constants();
  const auto& k = series_coefficients();
  const auto w = tilt_correction_weights();
  struct Row {
    const char* name;
    double value;
    std::optional<double> target;
    double tol;
  };
  const std::vector<Row> rows{
      {"phi_C", c.half_angle, 0.263315538964831, 1e-9},
      {"w_C", c.cap_width, std::nullopt, 0.0},
      {"A_C", c.cap_area, 0.012003664907850, 1e-12},
      {"L", c.lattice_constant, 3.93106461489781, 1e-11},
      {"delta_C", c.density, 0.22936, 1e-5},
      {"B", k.B, 0.5205664, 1e-7},
      {"C", k.C, 0.0060646, 1e-7},
      {"D", k.D, 7.4190894, 1e-7},
      {"E", k.E, 0.2648475, 1e-7},
      {"F", k.F, -0.0030640, 1e-7},
      {"H", k.H, -0.0677473, 1e-7},
      {"J", k.J, -1.9310646, 1e-7},
      {"K", k.K, -0.0689353, 1e-7},
      {"L_tilt", k.L, 0.5026237, 1e-7},
      {"tilt_rc_weight", w[0], 0.0170374276, 1e-7},
      {"tilt_dy_weight", w[1], 0.2573167207, 1e-7},
  };
  bool ok = true;
  std::ostringstream os;
  if (cfg.format == "json") {
    io::json a = io::json::array();
    for (const auto& r : rows) {
      io::json j{{"name", r.name}, {"value", r.value}};
      if (r.target) {
        const bool pass = std::fabs(r.value - *r.target) <= r.tol * cfg.tol_scale;
        ok = ok && pass;
        j["target"] = *r.target;
        j["delta"] = r.value - *r.target;
        j["tolerance"] = r.tol * cfg.tol_scale;
        j["pass"] = pass;
      }
      a.push_back(j);
    }
    os << a.dump(2) << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-15s %22s %22s %12s  %s\n", "name", "value", "target", "delta", "status");
    os << line;
    for (const auto& r : rows) {
      if (!r.target) {
        std::snprintf(line, sizeof line, "%-15s %22.15g %22s %12s\n", r.name, r.value, "-", "-");
      } else {
        const double d = r.value - *r.target;
        const bool pass = std::fabs(d) <= r.tol * cfg.tol_scale;
        ok = ok && pass;
        std::snprintf(line, sizeof line, "%-15s %22.15g %22.15g %12.3e  %s<%g\n", r.name, r.value, *r.target, d,
                      pass ? "ok Δ" : "FAIL Δ", r.tol * cfg.tol_scale);
      }
      os << line;
    }
  }
  emit(cfg, os.str());
  return ok ? kExitOk : kExitCheckFailed;
}

// ---- scan -----------------------------------------------------------------

int cmd_scan(const RunConfig& cfg) {
  const Family f = load(cfg);
  const Mode mode = mode_of(cfg.mode);
  const auto grid = grid_of(cfg, {0.0});
  const auto records = scan(f, grid, mode);
  if (cfg.format == "json") {
    emit(cfg, io::to_json(records).dump(2) + "\n");
  } else {
    emit(cfg, io::to_csv(records));
  }
  for (const auto& r : records) {
    if (!r.ok()) {
      std::cerr << "eps " << io::fixed15(r.epsilon) << ": " << r.error << "\n";
    }
  }
  return kExitOk;
}

// ---- fit ------------------------------------------------------------------

int cmd_fit(const RunConfig& cfg) {
  const Family f = load(cfg);
  const Mode mode = mode_of(cfg.mode);
  const auto samples = grid_of(cfg, default_fit_samples());
  const auto fit = fit_eps2_coefficient(f, mode, samples);
  const auto body = fit_body_area_coefficient(f, samples);
  const auto geo = series_eps2_coefficients(f, RadiusLabeling::geometric);
  const auto printed = series_eps2_coefficients(f, RadiusLabeling::as_printed);
  const double bound = 1e-10 * std::fabs(fit.a0) * cfg.tol_scale;

  io::json j{{"mode", mode_name(mode)},
             {"samples", samples},
             {"A_T0", fit.a0},
             {"c1", fit.coefficients[0]},
             {"c2", fit.coefficients[1]},
             {"c3", fit.coefficients[2]},
             {"c4", fit.coefficients[3]},
             {"residual", fit.residual},
             {"residual_bound", bound},
             {"sign", fit.c2() < 0.0 ? "negative" : "positive"},
             {"body_area_c2", body.c2()},
             {"series_closed_form",
              {{"body", geo.body},
               {"cuts_shift_only", geo.cuts1},
               {"cuts_shift_tilt", geo.cuts2},
               {"net_shift_only", geo.net1()},
               {"net_shift_tilt", geo.net2()},
               {"linear_sum", geo.linear},
               {"printed_labeling_cuts_shift_tilt", printed.cuts2},
               {"printed_labeling_net_shift_tilt", printed.net2()}}}};
  if (cfg.format == "json") {
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "mode " << mode_name(mode) << "\n"
       << "A_T(0)                      " << io::fixed15(fit.a0) << "\n"
       << "c2 (eps^2 coefficient)      " << io::fixed15(fit.c2()) << "  sign " << j["sign"].get<std::string>()
       << "\n"
       << "c1, c3, c4                  " << io::fixed15(fit.coefficients[0]) << ", "
       << io::fixed15(fit.coefficients[2]) << ", " << io::fixed15(fit.coefficients[3]) << "\n"
       << "fit residual                " << io::fixed15(fit.residual) << " (bound " << bound << ")\n"
       << "body area c2                " << io::fixed15(body.c2()) << "\n"
       << "series cuts c2, shift       " << io::fixed15(geo.cuts1) << "\n"
       << "series cuts c2, shift+tilt  " << io::fixed15(geo.cuts2) << "\n"
       << "series net c2, shift        " << io::fixed15(geo.net1()) << "\n"
       << "series net c2, shift+tilt   " << io::fixed15(geo.net2()) << "\n"
       << "  printed radius labels     " << io::fixed15(printed.net2()) << "\n";
    emit(cfg, os.str());
  }
  return fit.residual <= bound ? kExitOk : kExitCheckFailed;
}

// ---- eigen ----------------------------------------------------------------

int cmd_eigen(const RunConfig& cfg) {
  if (cfg.mode != "series2" && cfg.mode != "exact2") throw UsageError("eigen needs --mode series2 or exact2");
  const Mode mode = mode_of(cfg.mode);
  const auto Q = assemble_quadratic_form(mode, cfg.step, true);
  const auto s = eigen_signature(Q);
  if (cfg.format == "json") {
    auto j = io::to_json(Q, s);
    j["residual"] = eigen_residual(Q.matrix, s);
    emit(cfg, j.dump(2) + "\n");
  } else {
    emit(cfg, io::eigenvector_csv(Q, s));
  }
  std::cerr << "signature: " << s.positive << " positive, " << s.negative << " negative, " << s.zero
            << " zero (reference claim: 1 positive, 11 negative)\n";
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct Injection {
  double stripe_width = 2.0;
};

Injection parse_injections(const std::vector<std::string>& items) {
  Injection inj;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--inject expects KEY=VAL, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    double val = 0.0;
    try {
      val = io::parse_double(item.substr(eq + 1));
    } catch (const Error&) {
      throw UsageError("--inject value is not a number: '" + item + "'");
    }
    if (key == "stripe-width") {
      inj.stripe_width = val;
    } else {
      throw UsageError("unknown --inject key '" + key + "' (known: stripe-width)");
    }
  }
  return inj;
}

std::string num(double v) { return io::fixed15(v); }

int cmd_verify(const RunConfig& cfg) {
  const Family f = load(cfg);
  const Injection inj = parse_injections(cfg.inject);
  const double t = cfg.tol_scale;

  std::vector<std::pair<std::string, std::function<CheckResult()>>> all{
      {"closure",
       [&] {
         const auto b = build_body(f.q, 1.0);
         return CheckResult{b.closure_residual <= 1e-12 * t, "residual " + num(b.closure_residual)};
       }},
      {"antipodal",
       [&] {
         const auto b = build_body(f.q, 1.0);
         double worst = 0.0;
         for (int i = 0; i < 10000; ++i) {
           const double phi = kTwoPi * i / 10000.0;
           worst = std::max(worst, std::fabs(norm(boundary_point(b, phi) - boundary_point(b, phi + kPi)) - 2.0));
         }
         return CheckResult{worst <= 1e-9 * t, "max |dist - 2| " + num(worst)};
       }},
      {"diameter",
       [&] {
         const auto p = diameter_profile(build_body(f.q, 1.0), 10000);
         const double dev = std::max(std::fabs(p.max - 2.0), std::fabs(p.min - 2.0));
         return CheckResult{dev <= 1e-9 * t, "diameter in [" + num(p.min) + ", " + num(p.max) + "]"};
       }},
      {"area",
       [&] {
         const auto fit = fit_body_area_coefficient(f);
         const double target = -reference::kAreaDeficit;
         return CheckResult{std::fabs(fit.c2() - target) <= 1e-9 * t,
                            "body area c2 " + num(fit.c2()) + " vs " + num(target)};
       }},
      {"cancellation",
       [&] {
         const auto s = series_eps2_coefficients(f);
         return CheckResult{std::fabs(s.linear) <= 1e-12 * t, "linear sum " + num(s.linear)};
       }},
      {"avoidance",
       [&] {
         const auto body_cfg = make_lattice(f.shift);
         std::ostringstream os;
         bool ok = true;
         for (double eps : {0.0, 0.05, 0.1}) {
           auto stripes = optimal_stripes(f, eps, Mode::exact2);
           for (auto& s : stripes) s.width = inj.stripe_width;
           const auto rep = verify_avoidance(build_body(f.q, eps), body_cfg, eps, stripes, 2000);
           double gap = 1e300, cross = 1e300;
           for (const auto& m : rep.edges) {
             gap = std::min(gap, m.gap);
             cross = std::min(cross, m.min_cross);
           }
           ok = ok && rep.ok();
           os << "eps " << eps << ": min gap " << num(gap) << ", min cross " << num(cross) << "; ";
         }
         return CheckResult{ok, os.str()};
       }},
      {"series-vs-exact",
       [&] {
         double prev = 0.0;
         double worst_ratio = 1e300;
         std::ostringstream os;
         for (double eps : {0.08, 0.04, 0.02}) {
           const double d = std::fabs(tortoise_area(f, eps, Mode::exact2).area - tortoise_area(f, eps, Mode::series2).area);
           if (prev > 0.0) worst_ratio = std::min(worst_ratio, prev / d);
           os << "eps " << eps << ": |exact2 - series2| " << num(d) << "; ";
           prev = d;
         }
         os << "min halving ratio " << num(worst_ratio);
         return CheckResult{worst_ratio >= 7.0 / t, os.str()};
       }},
      {"eigen",
       [&] {
         const auto Q = assemble_quadratic_form(Mode::series2);
         const auto s = eigen_signature(Q);
         const double res = eigen_residual(Q.matrix, s);
         const double norm_q = Q.matrix.norm();
         std::ostringstream os;
         os << "asymmetry " << Q.asymmetry << ", residual " << res << ", signature +" << s.positive << "/-"
            << s.negative;
         return CheckResult{Q.asymmetry <= 1e-12 * t && res <= 1e-10 * norm_q * t, os.str()};
       }},
  };

  std::set<std::string> wanted(cfg.checks.begin(), cfg.checks.end());
  for (const auto& w : wanted) {
    bool known = false;
    for (const auto& [name, fn] : all) known = known || name == w;
    if (!known) throw UsageError("unknown check '" + w + "'");
  }
  bool ok = true;
  std::ostringstream os;
  for (const auto& [name, fn] : all) {
    if (!wanted.empty() && wanted.count(name) == 0) continue;
    CheckResult r;
    try {
      r = fn();
    } catch (const Error& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    ok = ok && r.pass;
    os << (r.pass ? "PASS " : "FAIL ") << name << "  " << r.detail << "\n";
  }
  emit(cfg, os.str());
  return ok ? kExitOk : kExitCheckFailed;
}

// ---- render ---------------------------------------------------------------

int cmd_render(const RunConfig& cfg) {
  const Family f = load(cfg);
  if (cfg.eps.size() > 1) throw UsageError("render takes a single --eps");
  const double eps = cfg.eps.empty() ? 0.0 : cfg.eps.front();
  const Mode mode = mode_of(cfg.mode);
  if (!is_exact(mode)) throw UsageError("render draws exact stripes; use --mode exact1 or exact2");
  std::string text;
  if (cfg.subject == "body") {
    text = svg::render_body(build_body(f.q, eps));
  } else if (cfg.subject == "tortoise") {
    text = svg::render_tortoise(f, eps, optimal_stripes(f, eps, mode));
  } else if (cfg.subject == "lattice") {
    text = svg::render_lattice(f, eps, optimal_stripes(f, eps, mode));
  } else {
    throw UsageError("render subject must be body, tortoise or lattice");
  }
  emit(cfg, text);
  return kExitOk;
}

double tolerance_scale() {
  const char* env = std::getenv("CROFT_FORGE_TOL");
  if (env == nullptr || *env == '\0') return 1.0;
  double v = 0.0;
  try {
    v = io::parse_double(env);
  } catch (const Error&) {
    throw UsageError("CROFT_FORGE_TOL must be a positive number");
  }
  if (!(v > 0.0)) throw UsageError("CROFT_FORGE_TOL must be a positive number");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Croft tortoise densities for constant-diameter body families"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q-spec", cfg.q_spec, "q-spec JSON (default: the bundled 24-interval family)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };
  auto eps_opts = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "epsilon value(s)")->delimiter(',')->allow_extra_args(false);
    sub->add_option("--eps-range", cfg.eps_range, "grid a:b:step, inclusive");
  };
  auto mode_opt = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "series1, series2, exact1 or exact2");
  };

  auto* constants = app.add_subcommand("constants", "Croft constants and series coefficients with targets");
  common(constants);
  cfg.format = "table";

  auto* scan_cmd = app.add_subcommand("scan", "tortoise area and density over an epsilon grid");
  common(scan_cmd);
  eps_opts(scan_cmd);
  mode_opt(scan_cmd);

  auto* fit = app.add_subcommand("fit", "fit the eps^2 coefficient of the tortoise area");
  common(fit);
  eps_opts(fit);
  mode_opt(fit);

  auto* eigen = app.add_subcommand("eigen", "assemble and diagonalise the 12x12 ansatz form");
  common(eigen);
  mode_opt(eigen);
  eigen->add_option("--step", cfg.step, "finite-difference step in [1e-4, 1e-2]");

  auto* verify = app.add_subcommand("verify", "run the invariant checks");
  common(verify);
  verify->add_option("--checks", cfg.checks,
                     "comma list of closure, antipodal, diameter, area, cancellation, avoidance, "
                     "series-vs-exact, eigen")
      ->delimiter(',');
  verify->add_option("--inject", cfg.inject, "fault injection KEY=VAL (stripe-width=W)");

  auto* render = app.add_subcommand("render", "write an SVG of the body, a tortoise or a lattice patch");
  common(render);
  eps_opts(render);
  mode_opt(render);
  render->add_option("subject", cfg.subject, "body, tortoise or lattice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.tol_scale = tolerance_scale();
    if (!app.got_subcommand(constants) && cfg.format == "table") cfg.format = "csv";
    if (app.got_subcommand(constants)) return cmd_constants(cfg);
    if (app.got_subcommand(scan_cmd)) return cmd_scan(cfg);
    if (app.got_subcommand(fit)) return cmd_fit(cfg);
    if (app.got_subcommand(eigen)) return cmd_eigen(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(render)) return cmd_render(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
