// glassey: lifespan laboratory for the gradient-nonlinearity wave equation.
// Subcommands cover the constants/ladder algebra, the blow-up ODE models,
// the radial PDE solver with lifespan sweeps, and the front-functional
// verification pipeline. All output is deterministic: fixed key order,
// %.17g doubles, no timestamps.

#include "glassey/front.hpp"
#include "glassey/ode.hpp"
#include "glassey/odi.hpp"
#include "glassey/report.hpp"
#include "glassey/wave.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace odi = glassey::odi;
namespace ode = glassey::ode;
namespace wave = glassey::wave;
namespace front = glassey::front;
namespace fitm = glassey::fit;
namespace report = glassey::report;

using glassey::report::fmt;
using nlohmann::ordered_json;

namespace {

std::string outdir_flag;  // global --outdir, resolved via report::out_dir

void kv(const char* key, double value) {
  std::printf("%s=%s\n", key, fmt(value).c_str());
}
void kv(const char* key, const std::string& value) {
  std::printf("%s=%s\n", key, value.c_str());
}

std::filesystem::path resolve(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  return report::out_dir(outdir_flag) / p;
}

// ---------------------------------------------------------------- constants

struct ConstantsArgs {
  int n = 3;
  double p = 2.0, R = 1.0, A_f = 1.0;
  std::string json;
};

void run_constants(const ConstantsArgs& a) {
  const odi::SharpConstants sc = odi::sharp_constants(a.n, a.p);
  const odi::TheoremConstants tc = odi::theorem_constants(a.n, a.p, a.R, a.A_f);
  kv("n", a.n);
  kv("p", a.p);
  kv("p_critical", odi::critical_exponent(a.n));
  kv("p_prime", sc.p_prime);
  kv("c_tilde_crit", sc.c_tilde_crit);
  kv("remark_crit", sc.remark_crit);
  kv("subcritical_valid", sc.subcritical_valid ? 1.0 : 0.0);
  if (sc.subcritical_valid) {
    kv("b0", sc.b0);
    kv("b1", sc.b1);
    kv("c_tilde_sub", sc.c_tilde_sub);
    kv("remark_sub", sc.remark_sub);
  }
  kv("R", a.R);
  kv("A_f", a.A_f);
  if (tc.critical) kv("theorem_constant_critical", *tc.critical);
  if (tc.subcritical) kv("theorem_constant_subcritical", *tc.subcritical);
  if (!a.json.empty()) {
    ordered_json j{{"n", a.n},
                   {"p", a.p},
                   {"p_critical", odi::critical_exponent(a.n)},
                   {"p_prime", sc.p_prime},
                   {"c_tilde_crit", sc.c_tilde_crit},
                   {"remark_crit", sc.remark_crit},
                   {"subcritical_valid", sc.subcritical_valid},
                   {"R", a.R},
                   {"A_f", a.A_f}};
    if (sc.subcritical_valid) {
      j["b0"] = sc.b0;
      j["b1"] = sc.b1;
      j["c_tilde_sub"] = sc.c_tilde_sub;
      j["remark_sub"] = sc.remark_sub;
    }
    if (tc.critical) j["theorem_constant_critical"] = *tc.critical;
    if (tc.subcritical) j["theorem_constant_subcritical"] = *tc.subcritical;
    report::write_json(resolve(a.json), j);
  }
}

// --------------------------------------------------------------- odi-ladder

struct LadderArgs {
  std::string variant = "critical";
  int n = 3, K = 20;
  double p = 2.0, A = 1.0, T0 = 1.0;
  std::string csv;
};

void run_ladder(const LadderArgs& a) {
  const bool crit = a.variant == "critical";
  const odi::IterationLadder L =
      crit ? odi::critical_ladder(a.p, a.A, a.T0, a.K)
           : odi::subcritical_ladder(a.n, a.p, a.A, a.T0, a.K);
  kv("variant", a.variant);
  if (!crit) kv("n", a.n);
  kv("p", a.p);
  kv("A", a.A);
  kv("T0", a.T0);
  kv("K", a.K);
  std::printf("k,q,ln_c,ln_t\n");
  for (int k = 1; k <= a.K; ++k)
    std::printf("%d,%s,%s,%s\n", k, fmt(L.q[k - 1]).c_str(),
                fmt(L.ln_c[k - 1]).c_str(), fmt(L.ln_t[k - 1]).c_str());
  if (crit) {
    kv("predict_ln_lifespan", odi::predict_lifespan_critical_ln(a.A, a.p));
  } else {
    kv("tilde_T_ln", L.tilde_T_ln);
    kv("predict_lifespan", odi::predict_lifespan_subcritical(a.A, a.n, a.p));
  }
  if (!a.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (int k = 1; k <= a.K; ++k)
      rows.push_back({std::to_string(k), fmt(L.q[k - 1]), fmt(L.ln_c[k - 1]),
                      fmt(L.ln_t[k - 1])});
    report::write_csv(resolve(a.csv), {"k", "q", "ln_c", "ln_t"}, rows);
  }
}

// --------------------------------------------------------------- ode shared

struct OdeArgs {
  std::string variant = "critical";
  int n = 3;
  double p = 2.0, A = 1.0, T0 = 1.0, H0 = 0.0, Hp0 = 0.0;
  double rtol = 1e-10, atol = 1e-12, horizon = 1e8, threshold = 1e30;
  long max_steps = 4'000'000;
  int trace = 4096, log_time = -1;
};

ode::OdeSpec to_spec(const OdeArgs& a) {
  ode::OdeSpec spec;
  spec.variant = a.variant == "critical" ? ode::Variant::critical
                                         : ode::Variant::subcritical;
  spec.n = a.n;
  spec.p = a.p;
  spec.A = a.A;
  spec.T0 = a.T0;
  spec.H0 = a.H0;
  spec.Hp0 = a.Hp0;
  return spec;
}

ode::IntegratorControl to_ctrl(const OdeArgs& a) {
  ode::IntegratorControl ctrl;
  ctrl.rtol = a.rtol;
  ctrl.atol = a.atol;
  ctrl.horizon = a.horizon;
  ctrl.blowup_threshold = a.threshold;
  ctrl.log_time = a.log_time;
  ctrl.max_steps = a.max_steps;
  ctrl.trace_samples = a.trace;
  return ctrl;
}

// --------------------------------------------------------------- ode-blowup

struct OdeBlowupArgs : OdeArgs {
  std::string json;
};

void run_ode_blowup(const OdeBlowupArgs& a) {
  const ode::OdeSpec spec = to_spec(a);
  const ode::BlowupResult res = ode::integrate_blowup(spec, to_ctrl(a));
  const ode::MembershipReport mem = ode::membership_residuals(res, spec);
  kv("variant", a.variant);
  kv("status", ode::to_string(res.status));
  kv("t_blow", res.t_blow);
  kv("ln_t_blow", res.ln_t_blow);
  kv("threshold_delta", res.threshold_delta);
  kv("projected", res.projected ? 1.0 : 0.0);
  kv("steps", static_cast<double>(res.steps));
  kv("t_end", res.t_end);
  kv("H_end", res.H_end);
  kv("min_forcing_residual", mem.min_forcing_residual);
  kv("min_nonlinear_residual", mem.min_nonlinear_residual);
  if (!a.json.empty()) {
    ordered_json j{{"variant", a.variant},
                   {"n", a.n},
                   {"p", a.p},
                   {"A", a.A},
                   {"T0", a.T0},
                   {"status", ode::to_string(res.status)},
                   {"t_blow", res.t_blow},
                   {"ln_t_blow", res.ln_t_blow},
                   {"threshold_delta", res.threshold_delta},
                   {"projected", res.projected},
                   {"steps", res.steps},
                   {"min_forcing_residual", mem.min_forcing_residual},
                   {"min_nonlinear_residual", mem.min_nonlinear_residual}};
    report::write_json(resolve(a.json), j);
  }
}

// ---------------------------------------------------------------- ode-sweep

struct OdeSweepArgs : OdeArgs {
  std::vector<double> As;
  int jobs = 1;
  std::string csv;
};

void run_ode_sweep(const OdeSweepArgs& a) {
  const ode::SweepResult sw = ode::sweep_ode(to_spec(a), a.As, to_ctrl(a), a.jobs);
  std::printf("A,t_blow,ln_t_blow,product,status\n");
  for (const auto& row : sw.rows)
    std::printf("%s,%s,%s,%s,%s\n", fmt(row.A).c_str(), fmt(row.t_blow).c_str(),
                fmt(row.ln_t_blow).c_str(), fmt(row.product).c_str(),
                ode::to_string(row.status));
  if (sw.loglog_fit) {
    kv("loglog_slope", sw.loglog_fit->slope);
    kv("loglog_r2", sw.loglog_fit->r2);
  }
  if (sw.products_nondecreasing)
    kv("products_nondecreasing", *sw.products_nondecreasing ? 1.0 : 0.0);
  if (!a.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : sw.rows)
      rows.push_back({a.variant, std::to_string(a.n), fmt(a.p), fmt(row.A),
                      fmt(a.T0), fmt(row.t_blow), fmt(row.ln_t_blow),
                      ode::to_string(row.status), fmt(row.product)});
    report::write_csv(
        resolve(a.csv),
        {"variant", "n", "p", "A", "T0", "t_blow", "ln_t_blow", "status", "product"},
        rows);
  }
}

// --------------------------------------------------------------- pde shared

struct PdeArgs {
  int n = 2;
  double p = 2.0, epsilon = 1.0, dr = 1.0 / 200, cfl = 0.5;
  double amplitude = 1.0, R = 1.0;
  double threshold = 1e6, horizon = 100.0;
  std::string shape = "standard", g_mode = "zero";
  bool linear = false;
};

wave::WaveConfig to_config(const PdeArgs& a) {
  wave::WaveConfig cfg;
  cfg.n = a.n;
  cfg.p = a.p;
  cfg.epsilon = a.epsilon;
  cfg.profile.shape =
      a.shape == "shell" ? wave::Shape::shell_bump : wave::Shape::standard_bump;
  cfg.profile.R = a.R;
  cfg.profile.amplitude = a.amplitude;
  cfg.profile.g_mode =
      a.g_mode == "equal" ? wave::GMode::equal_to_f : wave::GMode::zero;
  cfg.dr = a.dr;
  cfg.cfl = a.cfl;
  cfg.blowup_threshold = a.threshold;
  cfg.horizon = a.horizon;
  cfg.nonlinearity_enabled = !a.linear;
  return cfg;
}

void add_pde_options(CLI::App* cmd, PdeArgs& a) {
  cmd->add_option("--n", a.n, "space dimension (>= 2)");
  cmd->add_option("--p", a.p, "gradient-nonlinearity exponent");
  cmd->add_option("--dr", a.dr, "grid spacing");
  cmd->add_option("--cfl", a.cfl, "dt = cfl * dr");
  cmd->add_option("--amp", a.amplitude, "data amplitude");
  cmd->add_option("--R", a.R, "data support radius");
  cmd->add_option("--threshold", a.threshold, "blow-up level on max |u_r|");
  cmd->add_option("--horizon", a.horizon, "latest time to integrate to");
  cmd->add_option("--shape", a.shape, "data shape: standard | shell")
      ->check(CLI::IsMember({"standard", "shell"}));
  cmd->add_option("--g-mode", a.g_mode, "initial velocity: zero | equal")
      ->check(CLI::IsMember({"zero", "equal"}));
  cmd->add_flag("--linear", a.linear, "disable the nonlinearity (free wave)");
}

// ------------------------------------------------------------------ pde-run

struct PdeRunArgs : PdeArgs {
  double field_at = -1.0;
  std::string field_csv, json;
};

void run_pde(const PdeRunArgs& a) {
  const wave::WaveConfig cfg = to_config(a);
  if (a.field_at >= 0) {
    const wave::SnapshotSeries series =
        wave::evolve_with_snapshots(cfg, a.field_at == 0 ? cfg.dr : a.field_at);
    const wave::RadialField& f = series.snaps.back();
    kv("t", f.t);
    kv("support_radius", f.support_radius);
    kv("max_abs_gradient", wave::max_abs_gradient(f));
    kv("energy", wave::discrete_energy(f, cfg.n));
    kv("clean", series.clean ? 1.0 : 0.0);
    if (!a.field_csv.empty()) {
      std::vector<std::vector<std::string>> rows;
      for (Eigen::Index i = 0; i < f.size(); ++i)
        rows.push_back({fmt(f.r(i)), fmt(f.u[i]), fmt(f.v[i])});
      report::write_csv(resolve(a.field_csv), {"r", "u", "v"}, rows);
    }
    return;
  }
  const wave::LifespanEstimate est = wave::detect_lifespan(cfg);
  kv("status", wave::to_string(est.status));
  kv("T_num", est.T_num);
  kv("threshold_sensitivity", est.threshold_sensitivity);
  kv("from_step_failure", est.from_step_failure ? 1.0 : 0.0);
  kv("steps", static_cast<double>(est.steps));
  kv("max_grad_final", est.max_grad_final);
  if (!a.json.empty()) {
    ordered_json j{{"n", a.n},
                   {"p", a.p},
                   {"epsilon", a.epsilon},
                   {"dr", a.dr},
                   {"status", wave::to_string(est.status)},
                   {"T_num", est.T_num},
                   {"threshold_sensitivity", est.threshold_sensitivity},
                   {"from_step_failure", est.from_step_failure},
                   {"steps", est.steps}};
    report::write_json(resolve(a.json), j);
  }
}

// ---------------------------------------------------------------- pde-sweep

struct PdeSweepArgs : PdeArgs {
  std::vector<double> epsilons;
  int jobs = 1;
  std::string csv;
};

void run_pde_sweep(const PdeSweepArgs& a) {
  PdeArgs base = a;
  const wave::PdeSweepResult sw = wave::pde_sweep(to_config(base), a.epsilons, a.jobs);
  std::printf("epsilon,T_num,threshold_sensitivity,product,status\n");
  for (const auto& row : sw.rows)
    std::printf("%s,%s,%s,%s,%s\n", fmt(row.epsilon).c_str(),
                fmt(row.T_num).c_str(), fmt(row.threshold_sensitivity).c_str(),
                fmt(row.product).c_str(), wave::to_string(row.status));
  kv("semilog", sw.semilog ? 1.0 : 0.0);
  kv("fit_slope", sw.fit.slope);
  kv("fit_intercept", sw.fit.intercept);
  kv("fit_r2", sw.fit.r2);
  if (!a.csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : sw.rows)
      rows.push_back({std::to_string(a.n), fmt(a.p), fmt(row.epsilon),
                      fmt(row.T_num), fmt(row.threshold_sensitivity),
                      fmt(row.product), wave::to_string(row.status)});
    report::write_csv(resolve(a.csv),
                      {"n", "p", "epsilon", "T_num", "threshold_sensitivity",
                       "product", "status"},
                      rows);
  }
}

// --------------------------------------------------------- verify-functional

struct FunctionalArgs : PdeArgs {
  double beta = 0.0, R0 = 0.75, t_end = 10.0, t_lo = 0.0;
  std::string json;
};

void run_functional(const FunctionalArgs& a) {
  PdeArgs base = a;
  base.horizon = std::max(a.horizon, a.t_end);
  const wave::WaveConfig cfg = to_config(base);
  front::FunctionalConfig fcfg;
  fcfg.beta = a.beta;
  fcfg.R0 = a.R0;
  fcfg.R = a.R;
  fcfg.p = a.p;

  const wave::SnapshotSeries series = wave::evolve_with_snapshots(cfg, a.t_end);
  const front::FunctionalTrace trace =
      front::compute_functional(series.snaps, fcfg, cfg);
  const double t_hi = series.snaps.back().t;
  const front::BoundsReport bounds = front::verify_lower_bounds(trace, a.t_lo, t_hi);
  const front::KernelConstants kc = front::kernel_constants(cfg.n, fcfg);

  kv("clean", series.clean ? 1.0 : 0.0);
  kv("t_hi", t_hi);
  kv("snapshots", static_cast<double>(series.snaps.size()));
  kv("A_f", trace.A_f);
  kv("A_f_conservative", trace.A_f_conservative);
  kv("kernel_c", kc.c);
  kv("kernel_branch", static_cast<double>(kc.branch));
  kv("quad_delta", trace.quad_delta);
  kv("est_discretization_error", bounds.est_discretization_error);
  kv("min_linear_residual", bounds.min_linear_residual);
  kv("t_min_linear", bounds.t_min_linear);
  kv("min_nonlinear_residual", bounds.min_nonlinear_residual);
  kv("t_min_nonlinear", bounds.t_min_nonlinear);

  ordered_json checks = ordered_json::array();
  for (double t : {fcfg.R1(), 1.0, 5.0, 20.0}) {
    if (t > t_hi) continue;
    const double j = front::compute_J(t, cfg.n, fcfg);
    const double cap = kc.c * kc.jbar(t);
    std::printf("J(%s)=%s cJbar=%s ratio=%s\n", fmt(t).c_str(), fmt(j).c_str(),
                fmt(cap).c_str(), fmt(j / cap).c_str());
    checks.push_back(ordered_json{{"t", t}, {"J", j}, {"c_jbar", cap}});
  }
  if (!a.json.empty()) {
    ordered_json j{{"n", a.n},
                   {"p", a.p},
                   {"epsilon", a.epsilon},
                   {"beta", a.beta},
                   {"R0", a.R0},
                   {"R", a.R},
                   {"t_hi", t_hi},
                   {"clean", series.clean},
                   {"A_f", trace.A_f},
                   {"A_f_conservative", trace.A_f_conservative},
                   {"kernel_c", kc.c},
                   {"kernel_branch", kc.branch},
                   {"quad_delta", trace.quad_delta},
                   {"est_discretization_error", bounds.est_discretization_error},
                   {"min_linear_residual", bounds.min_linear_residual},
                   {"t_min_linear", bounds.t_min_linear},
                   {"min_nonlinear_residual", bounds.min_nonlinear_residual},
                   {"t_min_nonlinear", bounds.t_min_nonlinear},
                   {"j_checks", checks}};
    report::write_json(resolve(a.json), j);
  }
}

// ---------------------------------------------------------------------- fit

struct FitArgs {
  std::string input;
  int xcol = 0, ycol = 1;
  bool log_x = false, log_y = false;
};

void run_fit(const FitArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw std::invalid_argument("fit: cannot open " + a.input);
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    const int need = std::max(a.xcol, a.ycol);
    if (need >= static_cast<int>(cells.size())) continue;
    try {
      const double x = std::stod(cells[a.xcol]);
      const double y = std::stod(cells[a.ycol]);
      xs.push_back(a.log_x ? std::log(x) : x);
      ys.push_back(a.log_y ? std::log(y) : y);
    } catch (const std::exception&) {
      continue;  // header or non-numeric row
    }
  }
  Eigen::Map<const Eigen::ArrayXd> x(xs.data(), static_cast<Eigen::Index>(xs.size()));
  Eigen::Map<const Eigen::ArrayXd> y(ys.data(), static_cast<Eigen::Index>(ys.size()));
  const fitm::FitResult res = fitm::fit_line(x.eval(), y.eval());
  kv("slope", res.slope);
  kv("intercept", res.intercept);
  kv("r2", res.r2);
  kv("n_used", static_cast<double>(res.n_used));
  kv("n_excluded", static_cast<double>(res.excluded.size()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lifespan laboratory for wave equations with gradient nonlinearity"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file (flags win)");
  app.add_option("--outdir", outdir_flag,
                 "output directory (beats GLASSEY_OUTDIR, default ./out)");

  auto cons = std::make_shared<ConstantsArgs>();
  {
    CLI::App* c = app.add_subcommand("constants", "sharp and theorem constants");
    c->add_option("--n", cons->n, "space dimension");
    c->add_option("--p", cons->p, "nonlinearity exponent");
    c->add_option("--R", cons->R, "data support radius");
    c->add_option("--Af", cons->A_f, "data mass on the outer band");
    c->add_option("--json", cons->json, "also write a JSON report");
    c->callback([cons] { run_constants(*cons); });
  }

  auto lad = std::make_shared<LadderArgs>();
  {
    CLI::App* c = app.add_subcommand("odi-ladder", "iteration ladder table");
    c->add_option("--variant", lad->variant, "critical | subcritical")
        ->check(CLI::IsMember({"critical", "subcritical"}));
    c->add_option("--n", lad->n, "space dimension (subcritical)");
    c->add_option("--p", lad->p, "nonlinearity exponent");
    c->add_option("--A", lad->A, "forcing amplitude");
    c->add_option("--T0", lad->T0, "activation time");
    c->add_option("--K", lad->K, "number of rungs");
    c->add_option("--csv", lad->csv, "also write the table as CSV");
    c->callback([lad] { run_ladder(*lad); });
  }

  auto ob = std::make_shared<OdeBlowupArgs>();
  auto osw = std::make_shared<OdeSweepArgs>();
  auto add_ode_options = [](CLI::App* c, OdeArgs& a) {
    c->add_option("--variant", a.variant, "critical | subcritical")
        ->check(CLI::IsMember({"critical", "subcritical"}));
    c->add_option("--n", a.n, "space dimension");
    c->add_option("--p", a.p, "nonlinearity exponent");
    c->add_option("--T0", a.T0, "activation time");
    c->add_option("--H0", a.H0, "initial value");
    c->add_option("--Hp0", a.Hp0, "initial slope");
    c->add_option("--rtol", a.rtol, "relative tolerance");
    c->add_option("--atol", a.atol, "absolute tolerance");
    c->add_option("--horizon", a.horizon, "latest time to integrate to");
    c->add_option("--threshold", a.threshold, "blow-up level on H");
    c->add_option("--max-steps", a.max_steps, "step budget");
    c->add_option("--trace", a.trace, "trace sample cap");
    c->add_option("--log-time", a.log_time, "-1 auto, 0 physical, 1 log");
  };
  {
    CLI::App* c = app.add_subcommand("ode-blowup", "integrate one equality model");
    add_ode_options(c, *ob);
    c->add_option("--A", ob->A, "forcing amplitude");
    c->add_option("--json", ob->json, "also write a JSON report");
    c->callback([ob] { run_ode_blowup(*ob); });
  }
  {
    CLI::App* c = app.add_subcommand("ode-sweep", "lifespan scaling over amplitudes");
    add_ode_options(c, *osw);
    c->add_option("--A", osw->As, "amplitude list")->required()->expected(-3);
    c->add_option("--jobs", osw->jobs, "worker threads");
    c->add_option("--csv", osw->csv, "also write rows as CSV");
    c->callback([osw] { run_ode_sweep(*osw); });
  }

  auto pr = std::make_shared<PdeRunArgs>();
  {
    CLI::App* c = app.add_subcommand("pde-run", "one lifespan run of the radial solver");
    add_pde_options(c, *pr);
    c->add_option("--eps", pr->epsilon, "data size");
    c->add_option("--field-at", pr->field_at,
                  "skip lifespan detection; report/export the field at this time");
    c->add_option("--field-csv", pr->field_csv, "CSV path for --field-at");
    c->add_option("--json", pr->json, "also write a JSON report");
    c->callback([pr] { run_pde(*pr); });
  }

  auto psw = std::make_shared<PdeSweepArgs>();
  {
    CLI::App* c = app.add_subcommand("pde-sweep", "lifespan scaling over data sizes");
    add_pde_options(c, *psw);
    c->add_option("--eps", psw->epsilons, "data size list")->required()->expected(-3);
    c->add_option("--jobs", psw->jobs, "worker threads");
    c->add_option("--csv", psw->csv, "also write rows as CSV");
    c->callback([psw] { run_pde_sweep(*psw); });
  }

  auto fn = std::make_shared<FunctionalArgs>();
  {
    CLI::App* c = app.add_subcommand(
        "verify-functional", "front-functional lower bounds on a solver run");
    add_pde_options(c, *fn);
    c->add_option("--eps", fn->epsilon, "data size");
    c->add_option("--beta", fn->beta, "weight exponent");
    c->add_option("--R0", fn->R0, "inner band radius");
    c->add_option("--t-end", fn->t_end, "evolve snapshots up to this time");
    c->add_option("--t-lo", fn->t_lo, "start of the nonlinear-bound window");
    c->add_option("--json", fn->json, "also write a JSON report");
    c->callback([fn] { run_functional(*fn); });
  }

  auto ft = std::make_shared<FitArgs>();
  {
    CLI::App* c = app.add_subcommand("fit", "least-squares line through CSV columns");
    c->add_option("input", ft->input, "CSV file")->required();
    c->add_option("--xcol", ft->xcol, "x column index (0-based)");
    c->add_option("--ycol", ft->ycol, "y column index (0-based)");
    c->add_flag("--log-x", ft->log_x, "fit against ln(x)");
    c->add_flag("--log-y", ft->log_y, "fit against ln(y)");
    c->callback([ft] { run_fit(*ft); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
