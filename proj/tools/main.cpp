#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddelc/app/pipelines.hpp"
#include "ddelc/app/report.hpp"
#include "ddelc/batch.hpp"
#include "ddelc/dde.hpp"
#include "ddelc/errors.hpp"
#include "ddelc/harmonic_balance.hpp"
#include "ddelc/melnikov.hpp"

namespace {

namespace app = ddelc::app;
using nlohmann::json;

struct CommonOpts {
  std::string csv;
  std::string json_path;
  std::string manifest;
  int threads = 0;
  bool seedless = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--csv", c.csv, "write CSV output to this path");
  cmd->add_option("--json", c.json_path, "write JSON output to this path");
  cmd->add_option("--manifest", c.manifest, "write a run manifest to this path");
  cmd->add_option("--threads", c.threads, "cap worker threads (default: all cores)");
  // Reserved: every algorithm here is deterministic. Accepted as a bare flag
  // only; passing a value is a usage error.
  cmd->add_flag("--seedless", c.seedless, "no-op; all algorithms are deterministic")
      ->disable_flag_override();
}

/// Collects emitted files so the manifest can digest exactly what was
/// written.
class Emitter {
 public:
  Emitter(std::string subcommand, json parameters, const CommonOpts& common)
      : manifest_(std::move(subcommand), std::move(parameters)),
        common_(common),
        start_(std::chrono::steady_clock::now()) {}

  void file(const std::filesystem::path& path, std::string_view content) {
    app::write_file(path, content);
    manifest_.add_output(path, content);
  }

  void maybe_csv(const app::Table& t) {
    if (!common_.csv.empty()) file(common_.csv, app::to_csv(t));
  }

  void maybe_json(const json& doc) {
    if (!common_.json_path.empty()) file(common_.json_path, doc.dump(2) + "\n");
  }

  void finish() {
    if (common_.manifest.empty()) return;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_.write(common_.manifest, secs);
  }

 private:
  app::RunManifest manifest_;
  const CommonOpts& common_;
  std::chrono::steady_clock::time_point start_;
};

void print_progress(const std::string& note) { std::cerr << note << "\n"; }

int run_cli(int argc, char** argv) {
  CLI::App cli{"limit-cycle analysis of the cubic delay oscillator "
               "x'' + alpha x' + x(t-T) + x^3 = 0"};
  cli.require_subcommand(1);

  // ---- simulate ----------------------------------------------------------
  struct {
    double delay = 0.0, alpha = 0.0, x0 = 1.0, v0 = 0.0, dt = 0.0, t_end = 100.0;
    double blowup = 1e6, settle = 0.5;
    bool summary = false;
    CommonOpts common;
  } sim;
  auto* sim_cmd = cli.add_subcommand("simulate", "integrate one configuration");
  sim_cmd->add_option("--delay", sim.delay, "delay T")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--alpha", sim.alpha, "damping coefficient")->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--x0", sim.x0, "history position");
  sim_cmd->add_option("--v0", sim.v0, "history velocity");
  sim_cmd->add_option("--dt", sim.dt, "step size (0 = automatic)");
  sim_cmd->add_option("--t-end", sim.t_end, "final time")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--blowup", sim.blowup, "divergence threshold on |x|");
  sim_cmd->add_option("--settle", sim.settle, "fraction of the run discarded before measuring");
  sim_cmd->add_flag("--summary", sim.summary, "print an amplitude summary as JSON");
  add_common(sim_cmd, sim.common);

  // ---- separatrix --------------------------------------------------------
  struct {
    double delay = 0.3, alpha = 0.0, lo = 20.0, hi = 30.0, tol = 1e-3;
    CommonOpts common;
  } sep;
  auto* sep_cmd = cli.add_subcommand("separatrix", "bisect a basin boundary on x0");
  sep_cmd->add_option("--delay", sep.delay)->required()->check(CLI::PositiveNumber);
  sep_cmd->add_option("--alpha", sep.alpha)->check(CLI::NonNegativeNumber);
  sep_cmd->add_option("--lo", sep.lo)->required();
  sep_cmd->add_option("--hi", sep.hi)->required();
  sep_cmd->add_option("--tol", sep.tol)->check(CLI::PositiveNumber);
  add_common(sep_cmd, sep.common);

  // ---- hb ----------------------------------------------------------------
  struct {
    double delay = 0.3;
    double alpha = -1.0;
    int n_max = 9;
    CommonOpts common;
  } hbo;
  auto* hb_cmd = cli.add_subcommand("hb", "harmonic-balance branches");
  hb_cmd->add_option("--delay", hbo.delay)->required()->check(CLI::PositiveNumber);
  hb_cmd->add_option("--alpha", hbo.alpha, "damping (omit for the undamped ladder)");
  hb_cmd->add_option("--n-max", hbo.n_max, "number of undamped branches")->check(CLI::PositiveNumber);
  add_common(hb_cmd, hbo.common);

  // ---- hopf-curve --------------------------------------------------------
  struct {
    double amin = 0.0, amax = 2.0;
    int steps = 81;
    CommonOpts common;
  } hopf;
  auto* hopf_cmd = cli.add_subcommand("hopf-curve", "critical delay versus damping");
  hopf_cmd->add_option("--alpha-min", hopf.amin);
  hopf_cmd->add_option("--alpha-max", hopf.amax);
  hopf_cmd->add_option("--steps", hopf.steps)->check(CLI::Range(2, 100000));
  add_common(hopf_cmd, hopf.common);

  // ---- folds -------------------------------------------------------------
  struct {
    int n_max = 8;
    double t_max = 3.0;
    bool inactive = false;
    CommonOpts common;
  } folds;
  auto* folds_cmd = cli.add_subcommand("folds", "saddle-node (fold) curves from tan x = x");
  folds_cmd->add_option("--n-max", folds.n_max)->check(CLI::PositiveNumber);
  folds_cmd->add_option("--t-max", folds.t_max)->check(CLI::PositiveNumber);
  folds_cmd->add_flag("--include-inactive", folds.inactive,
                      "also emit branches with cos(beta_n) < 0");
  add_common(folds_cmd, folds.common);

  // ---- eigen -------------------------------------------------------------
  struct {
    double delay = 0.4, alpha = 0.1;
    int branches = 4;
    CommonOpts common;
  } eig;
  auto* eig_cmd = cli.add_subcommand("eigen", "characteristic roots of the linearization");
  eig_cmd->add_option("--delay", eig.delay)->required()->check(CLI::NonNegativeNumber);
  eig_cmd->add_option("--alpha", eig.alpha)->required()->check(CLI::NonNegativeNumber);
  eig_cmd->add_option("--n-branches", eig.branches)->check(CLI::PositiveNumber);
  add_common(eig_cmd, eig.common);

  // ---- melnikov ----------------------------------------------------------
  struct {
    double delay = 0.2, a1_min = 5.0, a1_max = 60.0, step = 0.0, tol = 1e-6;
    std::string zeros_json;
    CommonOpts common;
  } mln;
  auto* mel_cmd = cli.add_subcommand("melnikov", "sample the Melnikov integral over amplitude");
  mel_cmd->add_option("--delay", mln.delay)->required()->check(CLI::PositiveNumber);
  mel_cmd->add_option("--a1-min", mln.a1_min)->required()->check(CLI::PositiveNumber);
  mel_cmd->add_option("--a1-max", mln.a1_max)->required()->check(CLI::PositiveNumber);
  mel_cmd->add_option("--step", mln.step, "scan step (0 = automatic)");
  mel_cmd->add_option("--tol", mln.tol, "zero-refinement tolerance")->check(CLI::PositiveNumber);
  mel_cmd->add_option("--zeros-json", mln.zeros_json, "also scan for zeros and write them here");
  add_common(mel_cmd, mln.common);

  // ---- melnikov-compare --------------------------------------------------
  struct {
    std::vector<double> delays;
    CommonOpts common;
  } cmp;
  auto* cmp_cmd = cli.add_subcommand("melnikov-compare",
                                     "first Melnikov zero versus harmonic balance");
  cmp_cmd->add_option("--delays", cmp.delays, "comma-separated delays")
      ->required()
      ->delimiter(',');
  add_common(cmp_cmd, cmp.common);

  // ---- elliptic-eval -----------------------------------------------------
  struct {
    double m = 0.5, z = 0.0;
    int terms = 12;
    CommonOpts common;
  } ell;
  auto* ell_cmd = cli.add_subcommand("elliptic-eval", "evaluate sn, cn, dn, K and the nome");
  ell_cmd->add_option("--m", ell.m, "modulus-squared")->required();
  ell_cmd->add_option("--z", ell.z, "argument");
  ell_cmd->add_option("--terms", ell.terms, "series terms")->check(CLI::PositiveNumber);
  add_common(ell_cmd, ell.common);

  // ---- table1 / table2 ---------------------------------------------------
  struct {
    CommonOpts common;
  } t1;
  auto* t1_cmd = cli.add_subcommand("table1", "undamped amplitude ladder at T = 0.3");
  add_common(t1_cmd, t1.common);

  struct {
    bool simulate = false;
    CommonOpts common;
  } t2;
  auto* t2_cmd = cli.add_subcommand("table2", "damped branches, eigenvalues and observations");
  t2_cmd->add_flag("--simulate", t2.simulate, "fill the observed column by direct integration");
  add_common(t2_cmd, t2.common);

  // ---- reproduce ---------------------------------------------------------
  struct {
    std::string target;
    std::string out_dir = ".";
    bool simulate = false;
    CommonOpts common;
  } rep;
  auto* rep_cmd = cli.add_subcommand("reproduce", "emit the data set for one table or figure");
  rep_cmd->add_option("target", rep.target, "one of: table1 table2 fig1 fig2 fig3 fig4 fig5 fig7")
      ->required();
  rep_cmd->add_option("--out-dir", rep.out_dir, "directory for the emitted files");
  rep_cmd->add_flag("--simulate", rep.simulate, "fill table2's observed column");
  add_common(rep_cmd, rep.common);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 1;     // usage errors exit 1 regardless of kind
  }

  const auto common_of = [&]() -> CommonOpts& {
    if (*sim_cmd) return sim.common;
    if (*sep_cmd) return sep.common;
    if (*hb_cmd) return hbo.common;
    if (*hopf_cmd) return hopf.common;
    if (*folds_cmd) return folds.common;
    if (*eig_cmd) return eig.common;
    if (*mel_cmd) return mln.common;
    if (*cmp_cmd) return cmp.common;
    if (*ell_cmd) return ell.common;
    if (*t1_cmd) return t1.common;
    if (*t2_cmd) return t2.common;
    return rep.common;
  };
  ddelc::batch::set_threads(common_of().threads);

  if (*sim_cmd) {
    ddelc::dde::SimConfig cfg;
    cfg.delay = sim.delay;
    cfg.damping = sim.alpha;
    cfg.x0 = sim.x0;
    cfg.v0 = sim.v0;
    cfg.dt = sim.dt > 0.0 ? sim.dt : ddelc::dde::default_dt(sim.delay, sim.alpha, sim.x0);
    cfg.t_end = sim.t_end;
    cfg.blowup_threshold = sim.blowup;
    Emitter em("simulate",
               {{"delay", sim.delay}, {"alpha", sim.alpha}, {"x0", sim.x0}, {"v0", sim.v0},
                {"dt", cfg.dt}, {"t_end", sim.t_end}, {"blowup", sim.blowup},
                {"settle", sim.settle}},
               sim.common);
    const auto traj = ddelc::dde::integrate(cfg);
    if (!sim.common.csv.empty()) {
      app::Table t;
      t.header = {"t", "x", "xdot"};
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto s = traj.state(i);
        t.add_row({app::format_number(traj.time(i)), app::format_number(s.x),
                   app::format_number(s.v)});
      }
      em.maybe_csv(t);
    }
    if (sim.summary || !sim.common.json_path.empty()) {
      json doc = {{"schema", app::kJsonSchema}, {"diverged", traj.diverged()}};
      if (traj.diverged()) {
        doc["divergence_time"] = traj.divergence_time();
      } else {
        try {
          const auto est = ddelc::dde::measure_amplitude(traj, sim.settle);
          doc["amplitude"] = est.amplitude;
          doc["period"] = est.period;
          doc["n_peaks"] = est.n_peaks;
          doc["spread"] = est.spread;
          doc["converged"] = est.converged;
        } catch (const ddelc::insufficient_data_error& e) {
          doc["amplitude"] = nullptr;
          doc["note"] = e.what();
        }
      }
      if (sim.summary) std::cout << doc.dump(2) << "\n";
      em.maybe_json(doc);
    }
    em.finish();
    return 0;
  }

  if (*sep_cmd) {
    Emitter em("separatrix",
               {{"delay", sep.delay}, {"alpha", sep.alpha}, {"lo", sep.lo}, {"hi", sep.hi},
                {"tol", sep.tol}},
               sep.common);
    const double s = ddelc::dde::find_separatrix(sep.delay, sep.alpha, sep.lo, sep.hi, sep.tol);
    json doc = {{"schema", app::kJsonSchema}, {"delay", sep.delay}, {"alpha", sep.alpha},
                {"separatrix", s}, {"tol", sep.tol}};
    std::cout << doc.dump(2) << "\n";
    em.maybe_json(doc);
    em.finish();
    return 0;
  }

  if (*hb_cmd) {
    Emitter em("hb", {{"delay", hbo.delay}, {"alpha", hbo.alpha}, {"n_max", hbo.n_max}},
               hbo.common);
    const auto sols = hbo.alpha < 0.0
                          ? ddelc::hb::undamped_amplitudes(hbo.delay, hbo.n_max)
                          : ddelc::hb::damped_hb_solutions(hbo.delay, hbo.alpha);
    const auto t = app::hb_as_table(sols);
    std::cout << app::to_text(t);
    em.maybe_csv(t);
    json branches = json::array();
    for (const auto& s : sols)
      branches.push_back({{"n", s.n}, {"omega", s.omega}, {"amplitude", s.amplitude},
                          {"presumed_stable", s.presumed_stable}});
    em.maybe_json({{"schema", app::kJsonSchema}, {"delay", hbo.delay},
                   {"alpha", hbo.alpha < 0.0 ? 0.0 : hbo.alpha}, {"solutions", branches}});
    em.finish();
    return 0;
  }

  if (*hopf_cmd) {
    Emitter em("hopf-curve", {{"alpha_min", hopf.amin}, {"alpha_max", hopf.amax},
                              {"steps", hopf.steps}},
               hopf.common);
    const auto t = app::hopf_curve_table(hopf.amin, hopf.amax, hopf.steps);
    if (hopf.common.csv.empty())
      std::cout << app::to_text(t);
    else
      em.maybe_csv(t);
    em.finish();
    return 0;
  }

  if (*folds_cmd) {
    Emitter em("folds", {{"n_max", folds.n_max}, {"t_max", folds.t_max},
                         {"include_inactive", folds.inactive}},
               folds.common);
    const auto t = app::folds_table(folds.n_max, folds.t_max, folds.inactive);
    if (folds.common.csv.empty())
      std::cout << app::to_text(t);
    else
      em.maybe_csv(t);
    em.finish();
    return 0;
  }

  if (*eig_cmd) {
    Emitter em("eigen", {{"delay", eig.delay}, {"alpha", eig.alpha},
                         {"n_branches", eig.branches}},
               eig.common);
    const auto doc = app::eigen_json(eig.delay, eig.alpha, eig.branches);
    std::cout << doc.dump(2) << "\n";
    em.maybe_json(doc);
    em.finish();
    return 0;
  }

  if (*mel_cmd) {
    const double step = mln.step > 0.0 ? mln.step : ddelc::mel::default_scan_step(mln.delay);
    Emitter em("melnikov", {{"delay", mln.delay}, {"a1_min", mln.a1_min},
                            {"a1_max", mln.a1_max}, {"step", step}, {"tol", mln.tol}},
               mln.common);
    const auto t = app::melnikov_scan_table(mln.delay, mln.a1_min, mln.a1_max, step);
    if (mln.common.csv.empty())
      std::cout << app::to_text(t);
    else
      em.maybe_csv(t);
    if (!mln.zeros_json.empty()) {
      const auto zeros =
          ddelc::mel::scan_zeros(mln.delay, mln.a1_min, mln.a1_max, step, mln.tol);
      json zj = json::array();
      for (const auto& z : zeros)
        zj.push_back({{"n", z.n}, {"a1", z.a1}, {"lo", z.lo}, {"hi", z.hi}});
      em.file(mln.zeros_json, json{{"schema", app::kJsonSchema}, {"delay", mln.delay},
                                   {"zeros", zj}}
                                  .dump(2) +
                                  "\n");
    }
    em.finish();
    return 0;
  }

  if (*cmp_cmd) {
    Emitter em("melnikov-compare", {{"delays", cmp.delays}}, cmp.common);
    const auto t = app::compare_with_hb_table(cmp.delays);
    if (cmp.common.csv.empty())
      std::cout << app::to_text(t);
    else
      em.maybe_csv(t);
    em.finish();
    return 0;
  }

  if (*ell_cmd) {
    Emitter em("elliptic-eval", {{"m", ell.m}, {"z", ell.z}, {"terms", ell.terms}}, ell.common);
    const auto doc = app::elliptic_eval_json(ell.m, ell.z, ell.terms);
    std::cout << doc.dump(2) << "\n";
    em.maybe_json(doc);
    em.finish();
    return 0;
  }

  if (*t1_cmd) {
    Emitter em("table1", json::object(), t1.common);
    const auto rows = app::table1_rows();
    std::cout << app::to_text(app::table1_as_table(rows));
    em.maybe_csv(app::table1_as_table(rows));
    json jr = json::array();
    for (const auto& r : rows)
      jr.push_back({{"n", r.n}, {"amplitude", r.amplitude}, {"reference", r.reference},
                    {"flagged", r.flagged}});
    em.maybe_json({{"schema", app::kJsonSchema}, {"delay", 0.3}, {"rows", jr}});
    em.finish();
    return 0;
  }

  if (*t2_cmd) {
    Emitter em("table2", {{"simulate", t2.simulate}}, t2.common);
    const auto rows = app::table2_rows(t2.simulate, print_progress);
    std::cout << app::to_text(app::table2_as_table(rows));
    em.maybe_csv(app::table2_as_csv(rows));
    em.finish();
    return 0;
  }

  if (*rep_cmd) {
    Emitter em("reproduce", {{"target", rep.target}, {"out_dir", rep.out_dir},
                             {"simulate", rep.simulate}},
               rep.common);
    const auto out = app::reproduce(rep.target, rep.simulate, print_progress);
    for (const auto& [path, content] : out.files)
      em.file(std::filesystem::path(rep.out_dir) / path, content);
    if (!out.stdout_text.empty()) std::cout << out.stdout_text;
    em.finish();
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  try {
    return run_cli(argc, argv);
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ddelc::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
