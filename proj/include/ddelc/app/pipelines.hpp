#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ddelc/app/report.hpp"
#include "ddelc/harmonic_balance.hpp"

namespace ddelc::app {

/// Sink for per-row progress notes; the CLI routes these to stderr.
using ProgressFn = std::function<void(const std::string&)>;

/// Undamped amplitude ladder at T = 0.3 next to the published reference
/// values. Rows where direct evaluation of the amplitude formula disagrees
/// with the reference beyond 2-decimal printing precision are flagged; the
/// reference table is known to carry sign and transcription slips (most
/// visibly at n = 6).
struct Table1Row {
  int n = 0;
  double amplitude = 0.0;   ///< direct formula evaluation
  double reference = 0.0;   ///< published value
  bool flagged = false;     ///< |amplitude - reference| >= 0.01
};
std::vector<Table1Row> table1_rows();
Table table1_as_table(const std::vector<Table1Row>& rows);

/// One (T, alpha) sweep point of the damped analysis.
struct Table2Row {
  double delay = 0.0;
  double alpha = 0.0;
  std::optional<hb::CharRoot> leading_root;
  std::vector<hb::HbSolution> calculated;  ///< sorted by amplitude; empty = DNE
  /// Observed amplitudes per presumed-stable branch, in branch order. Empty
  /// when simulation was skipped. NaN marks a run that decayed to the origin.
  std::vector<double> observed;
  bool simulated = false;
};
std::vector<Table2Row> table2_rows(bool simulate, const ProgressFn& progress = {});
Table table2_as_table(const std::vector<Table2Row>& rows);
/// Long format for CSV output: one line per branch.
Table table2_as_csv(const std::vector<Table2Row>& rows);

Table hopf_curve_table(double alpha_min, double alpha_max, int steps);
Table folds_table(int n_max, double t_max, bool include_inactive);
Table hb_as_table(std::span<const hb::HbSolution> sols);
Table melnikov_scan_table(double delay, double a1_min, double a1_max, double step);
Table compare_with_hb_table(std::span<const double> delays);

nlohmann::json eigen_json(double delay, double alpha, int n_branches);
nlohmann::json elliptic_eval_json(double m, double z, int terms);

/// Everything a `reproduce <target>` run wants to emit: data files (relative
/// path -> exact bytes) and, for table targets, an aligned text rendering for
/// standard output.
struct ReproduceOutput {
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  std::string stdout_text;
};

inline constexpr std::string_view kReproduceTargets[] = {
    "table1", "table2", "fig1", "fig2", "fig3", "fig4", "fig5", "fig7"};

/// Builds the file set for one target. `simulate` only affects table2.
/// Unknown targets throw std::invalid_argument.
ReproduceOutput reproduce(std::string_view target, bool simulate,
                          const ProgressFn& progress = {});

}  // namespace ddelc::app
