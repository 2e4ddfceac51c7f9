#include "ddelc/app/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <stdexcept>

#include "ddelc/batch.hpp"
#include "ddelc/dde.hpp"
#include "ddelc/elliptic.hpp"
#include "ddelc/errors.hpp"
#include "ddelc/melnikov.hpp"

namespace ddelc::app {

namespace {

std::string format_fixed2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string eigen_text(const hb::CharRoot& r) {
  return format_fixed2(r.lambda.real()) + " +/- " + format_fixed2(r.lambda.imag()) + "i";
}

}  // namespace

std::vector<Table1Row> table1_rows() {
  // Published reference column; the entries for even n (and the transcribed
  // n = 6 value) do not match direct evaluation and get flagged below.
  static constexpr double kReference[] = {12.14, 24.21, 36.29, 48.38, 60.47,
                                          75.56, 84.65, 96.74, 108.83};
  const auto sols = hb::undamped_amplitudes(0.3, 9);
  std::vector<Table1Row> rows;
  rows.reserve(9);
  for (const auto& s : sols) {
    Table1Row row;
    row.n = s.n;
    row.amplitude = s.amplitude;
    row.reference = kReference[s.n - 1];
    // A faithful 2-decimal print (rounded or truncated) stays within 0.01 of
    // the true value; anything beyond that is a genuine discrepancy.
    row.flagged = std::abs(row.amplitude - row.reference) >= 0.01;
    rows.push_back(row);
  }
  return rows;
}

Table table1_as_table(const std::vector<Table1Row>& rows) {
  Table t;
  t.header = {"n", "amplitude", "reference", "note"};
  for (const auto& r : rows) {
    t.add_row({std::to_string(r.n), format_number(r.amplitude), format_number(r.reference),
               r.flagged ? "differs from reference" : ""});
  }
  return t;
}

namespace {

constexpr double kTable2TEnd = 600.0;

// Grid points of the damped sweep.
const std::vector<std::pair<double, double>>& table2_points() {
  static const std::vector<std::pair<double, double>> pts = {
      {0.4, 0.1}, {0.4, 0.2}, {0.4, 0.3}, {0.4, 0.4},
      {0.6, 0.1}, {0.6, 0.2}, {0.6, 0.3}, {0.6, 0.4}, {0.6, 0.5}, {0.6, 0.6},
      {1.0, 0.1}, {2.0, 0.1}};
  return pts;
}

// Peak magnitudes over the tail of a run, used to distinguish a settled
// cycle from slow decay toward the origin.
struct TailKind {
  bool decayed = false;
  bool settled = false;
  double amplitude = 0.0;
};

TailKind classify_tail(const dde::Trajectory& traj) {
  const auto est = dde::measure_amplitude(traj, 0.5);
  if (est.converged) return {false, true, est.amplitude};
  // Not settled: decaying runs have a late-tail mean well below the
  // whole-tail mean.
  const auto late = dde::measure_amplitude(traj, 0.9);
  if (late.amplitude < 0.8 * est.amplitude) return {true, false, late.amplitude};
  return {false, false, late.amplitude};
}

}  // namespace

std::vector<Table2Row> table2_rows(bool simulate, const ProgressFn& progress) {
  std::vector<Table2Row> rows;
  for (const auto& [T, alpha] : table2_points()) {
    Table2Row row;
    row.delay = T;
    row.alpha = alpha;
    row.calculated = hb::damped_hb_solutions(T, alpha);
    row.leading_root = hb::characteristic_roots(T, alpha, 4).front();
    rows.push_back(std::move(row));
  }

  if (!simulate) return rows;

  // One simulation per presumed-stable branch: the smallest branch is reached
  // from x0 = 1, the higher ones from x0 staged at their own amplitude. Rows
  // without branches get a decay check from x0 = 1.
  struct Job {
    std::size_t row;
    dde::SimConfig cfg;
    bool decay_check;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    dde::SimConfig base;
    base.delay = row.delay;
    base.damping = row.alpha;
    base.t_end = kTable2TEnd;
    bool any = false;
    for (std::size_t b = 0; b < row.calculated.size(); ++b) {
      if (!row.calculated[b].presumed_stable) continue;
      dde::SimConfig cfg = base;
      cfg.x0 = any ? row.calculated[b].amplitude : 1.0;
      cfg.dt = dde::default_dt(cfg.delay, cfg.damping, std::max(cfg.x0, row.calculated.back().amplitude));
      jobs.push_back({i, cfg, false});
      any = true;
    }
    if (!any) {
      dde::SimConfig cfg = base;
      cfg.x0 = 1.0;
      cfg.t_end = 2.0 * kTable2TEnd;  // decay near the stability boundary is slow
      cfg.dt = dde::default_dt(cfg.delay, cfg.damping, 1.0);
      jobs.push_back({i, cfg, true});
    }
  }

  std::vector<double> results(jobs.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs.size()); ++j) {
    try {
      const auto& job = jobs[static_cast<std::size_t>(j)];
      auto cfg = job.cfg;
      double amplitude = std::numeric_limits<double>::quiet_NaN();
      for (int attempt = 0; attempt < 3; ++attempt) {
        const auto traj = dde::integrate(cfg);
        if (traj.diverged()) break;
        const auto kind = classify_tail(traj);
        if (kind.decayed && job.decay_check) break;  // NaN marks DNE
        if (kind.settled) {
          amplitude = kind.amplitude;
          break;
        }
        cfg.t_end *= 2.0;
      }
      results[static_cast<std::size_t>(j)] = amplitude;
      if (progress) {
        char note[128];
        std::snprintf(note, sizeof note, "table2: T=%g alpha=%g x0=%g done", cfg.delay,
                      cfg.damping, cfg.x0);
        std::string s(note);
#pragma omp critical(ddelc_table2_progress)
        progress(s);
      }
    } catch (...) {
#pragma omp critical(ddelc_table2_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  for (std::size_t j = 0; j < jobs.size(); ++j)
    rows[jobs[j].row].observed.push_back(results[j]);
  for (auto& row : rows) row.simulated = true;
  return rows;
}

Table table2_as_table(const std::vector<Table2Row>& rows) {
  Table t;
  t.header = {"T", "alpha", "eigenvalue", "calculated", "observed"};
  for (const auto& row : rows) {
    std::string eig = row.leading_root ? eigen_text(*row.leading_root) : "";
    if (row.leading_root && row.leading_root->lambda.real() < 0.0) eig = "NRP";
    std::string calc;
    for (const auto& s : row.calculated) {
      if (!calc.empty()) calc += ", ";
      calc += format_number(s.amplitude);
    }
    if (calc.empty()) calc = "DNE";
    std::string obs;
    if (!row.simulated) {
      obs = "skipped";
    } else if (row.observed.size() == 1 && std::isnan(row.observed.front())) {
      obs = "DNE";
    } else {
      for (double a : row.observed) {
        if (!obs.empty()) obs += ", ";
        obs += std::isnan(a) ? "diverged" : format_number(a);
      }
    }
    t.add_row({format_number(row.delay), format_number(row.alpha), eig, calc, obs});
  }
  return t;
}

Table table2_as_csv(const std::vector<Table2Row>& rows) {
  Table t;
  t.header = {"T", "alpha", "branch", "omega", "calculated", "presumed_stable",
              "observed", "re_lambda", "im_lambda"};
  for (const auto& row : rows) {
    const std::string re = row.leading_root ? format_number(row.leading_root->lambda.real()) : "";
    const std::string im = row.leading_root ? format_number(row.leading_root->lambda.imag()) : "";
    if (row.calculated.empty()) {
      std::string obs = row.simulated ? "DNE" : "skipped";
      t.add_row({format_number(row.delay), format_number(row.alpha), "0", "", "DNE", "", obs, re, im});
      continue;
    }
    std::size_t obs_idx = 0;
    for (const auto& s : row.calculated) {
      std::string obs;
      if (!row.simulated) {
        obs = "skipped";
      } else if (s.presumed_stable && obs_idx < row.observed.size()) {
        const double a = row.observed[obs_idx++];
        obs = std::isnan(a) ? "DNE" : format_number(a);
      }
      t.add_row({format_number(row.delay), format_number(row.alpha), std::to_string(s.n),
                 format_number(s.omega), format_number(s.amplitude),
                 s.presumed_stable ? "1" : "0", obs, re, im});
    }
  }
  return t;
}

Table hopf_curve_table(double alpha_min, double alpha_max, int steps) {
  if (!(alpha_min >= 0.0) || !(alpha_max > alpha_min) || steps < 2)
    throw std::domain_error("hopf_curve_table: need 0 <= alpha_min < alpha_max and steps >= 2");
  Table t;
  t.header = {"alpha", "T_crit"};
  for (int i = 0; i < steps; ++i) {
    const double a = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
    t.add_row({format_number(a), format_number(hb::hopf_critical_delay(a))});
  }
  return t;
}

Table folds_table(int n_max, double t_max, bool include_inactive) {
  if (!(t_max > 0.0)) throw std::domain_error("folds_table: t_max must be > 0");
  Table t;
  t.header = {"n", "beta_n", "active", "T", "alpha_n"};
  constexpr int kSamples = 41;
  for (const auto& fc : hb::fold_curves(n_max)) {
    if (!fc.active && !include_inactive) continue;
    for (int i = 0; i < kSamples; ++i) {
      const double T = t_max * i / (kSamples - 1);
      t.add_row({std::to_string(fc.n), format_number(fc.beta), fc.active ? "1" : "0",
                 format_number(T), format_number(fc.alpha_at(T))});
    }
  }
  return t;
}

Table hb_as_table(std::span<const hb::HbSolution> sols) {
  Table t;
  t.header = {"n", "omega", "amplitude", "presumed_stable"};
  for (const auto& s : sols)
    t.add_row({std::to_string(s.n), format_number(s.omega), format_number(s.amplitude),
               s.presumed_stable ? "1" : "0"});
  return t;
}

Table melnikov_scan_table(double delay, double a1_min, double a1_max, double step) {
  if (!(a1_min > 0.0) || !(a1_min < a1_max) || !(step > 0.0))
    throw std::domain_error("melnikov_scan_table: need 0 < a1_min < a1_max and step > 0");
  std::vector<double> grid;
  for (double a = a1_min; a < a1_max + 0.5 * step; a += step)
    grid.push_back(std::min(a, a1_max));
  const auto values = batch::melnikov_values(delay, grid);
  Table t;
  t.header = {"a1", "value"};
  for (std::size_t i = 0; i < grid.size(); ++i)
    t.add_row({format_number(grid[i]), format_number(values[i])});
  return t;
}

Table compare_with_hb_table(std::span<const double> delays) {
  Table t;
  t.header = {"T", "numeric_zero", "hb_amplitude"};
  for (const auto& row : mel::compare_with_hb(delays))
    t.add_row({format_number(row.delay), format_number(row.melnikov_zero),
               format_number(row.hb_amplitude)});
  return t;
}

nlohmann::json eigen_json(double delay, double alpha, int n_branches) {
  auto roots = nlohmann::json::array();
  for (const auto& r : hb::characteristic_roots(delay, alpha, n_branches))
    roots.push_back({{"re", r.lambda.real()}, {"im", r.lambda.imag()}, {"residual", r.residual}});
  return {{"schema", kJsonSchema}, {"delay", delay}, {"alpha", alpha}, {"roots", roots}};
}

nlohmann::json elliptic_eval_json(double m, double z, int terms) {
  const auto jv = elliptic::jacobi(z, m);
  nlohmann::json out = {{"schema", kJsonSchema},
                        {"m", m},
                        {"z", z},
                        {"sn", jv.sn},
                        {"cn", jv.cn},
                        {"dn", jv.dn},
                        {"K", elliptic::complete_K(m)}};
  if (m > 0.0) {
    out["q"] = elliptic::nome(m);
    out["sn_series"] = elliptic::sn_series(z, m, terms);
    out["cn_series"] = elliptic::cn_series(z, m, terms);
    out["dn_series"] = elliptic::dn_series(z, m, terms);
    out["terms"] = terms;
  }
  return out;
}

namespace {

// Fig. 1 style separatrix experiment: locate the basin boundary at T = 0.3,
// alpha = 0 and emit one trajectory on each side of it.
ReproduceOutput reproduce_fig1(const ProgressFn& progress) {
  if (progress) progress("fig1: bisecting the basin boundary in [20, 30]");
  const double sep = dde::find_separatrix(0.3, 0.0, 20.0, 30.0, 1e-2);
  ReproduceOutput out;
  nlohmann::json summary = {{"schema", kJsonSchema}, {"delay", 0.3}, {"alpha", 0.0},
                            {"separatrix", sep}};
  for (const double offset : {-0.05, 0.05}) {
    dde::SimConfig cfg;
    cfg.delay = 0.3;
    cfg.x0 = sep + offset;
    cfg.dt = dde::default_dt(cfg.delay, 0.0, cfg.x0);
    cfg.t_end = 200.0;
    if (progress) progress("fig1: integrating x0 = " + format_number(cfg.x0));
    const auto traj = dde::integrate(cfg);
    Table t;
    t.header = {"t", "x"};
    for (std::size_t i = 0; i < traj.size(); i += 4)
      t.add_row({format_number(traj.time(i)), format_number(traj.state(i).x)});
    const char* side = offset < 0.0 ? "below" : "above";
    out.files.emplace_back(std::string("fig1_") + side + ".csv", to_csv(t));
    summary[side] = {{"x0", cfg.x0},
                     {"amplitude", dde::measure_amplitude(traj, 0.75).amplitude}};
  }
  out.files.emplace_back("fig1_summary.json", summary.dump(2) + "\n");
  return out;
}

ReproduceOutput reproduce_melnikov_fig(const char* name, double delay, double a1_min,
                                       double a1_max) {
  const double step = mel::default_scan_step(delay) / 4.0;
  ReproduceOutput out;
  out.files.emplace_back(std::string(name) + ".csv",
                         to_csv(melnikov_scan_table(delay, a1_min, a1_max, step)));
  return out;
}

}  // namespace

ReproduceOutput reproduce(std::string_view target, bool simulate, const ProgressFn& progress) {
  if (target == "table1") {
    const auto rows = table1_rows();
    const auto t = table1_as_table(rows);
    ReproduceOutput out;
    out.files.emplace_back("table1.csv", to_csv(t));
    out.stdout_text = to_text(t);
    return out;
  }
  if (target == "table2") {
    const auto rows = table2_rows(simulate, progress);
    ReproduceOutput out;
    out.files.emplace_back("table2.csv", to_csv(table2_as_csv(rows)));
    out.stdout_text = to_text(table2_as_table(rows));
    return out;
  }
  if (target == "fig1") return reproduce_fig1(progress);
  if (target == "fig2") return reproduce_melnikov_fig("fig2_melnikov_T0.05", 0.05, 40.0, 160.0);
  if (target == "fig3") return reproduce_melnikov_fig("fig3_melnikov_T0.2", 0.2, 5.0, 60.0);
  if (target == "fig4") {
    static constexpr double kDelays[] = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    ReproduceOutput out;
    out.files.emplace_back("fig4_compare.csv", to_csv(compare_with_hb_table(kDelays)));
    return out;
  }
  if (target == "fig5") {
    ReproduceOutput out;
    out.files.emplace_back("fig5_hopf.csv", to_csv(hopf_curve_table(0.0, 2.0, 81)));
    return out;
  }
  if (target == "fig7") {
    ReproduceOutput out;
    // Hopf boundary as (T, alpha) pairs plus the active fold lines.
    Table hopf;
    hopf.header = {"T", "alpha"};
    constexpr int kSteps = 81;
    for (int i = 0; i < kSteps; ++i) {
      const double a = 1.0 * i / (kSteps - 1);
      hopf.add_row({format_number(hb::hopf_critical_delay(a)), format_number(a)});
    }
    out.files.emplace_back("fig7_hopf.csv", to_csv(hopf));
    out.files.emplace_back("fig7_folds.csv", to_csv(folds_table(8, 3.0, false)));
    return out;
  }
  throw std::invalid_argument("reproduce: unknown target '" + std::string(target) + "'");
}

}  // namespace ddelc::app
