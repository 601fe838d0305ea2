#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "torus_pusher/config.hpp"
#include "torus_pusher/diagnostics.hpp"

namespace torus {

/// %.17g, which round-trips every double.
std::string format_double(double x);
/// Short form used in file names (%.6g).
std::string format_tag(double x);

struct SingleRun {
  Trajectory trajectory;
  std::vector<InvariantSeries> invariants;
  std::filesystem::path trajectory_csv;
  std::filesystem::path invariants_csv;
};

/// Integrates one (scheme, eps, dt) cell from the configured initial data and
/// writes traj_<scheme>_<eps>_<dt>.csv and invariants_<scheme>_<eps>_<dt>.csv
/// into `outdir`. A failed run still writes the samples it produced.
SingleRun run_single(const ExperimentConfig& cfg, Scheme scheme, double eps, double dt,
                     const std::filesystem::path& outdir);

struct SweepCell {
  Scheme scheme = Scheme::imex2;
  double eps = 0.0;
  double dt = 0.0;
  /// NaN when the reference is disabled or unavailable.
  double err_vs_reference = 0.0;
  double err_vs_asymptotic = 0.0;
  std::optional<RunFailure> failure;
};

struct SweepResult {
  /// Sorted by scheme, then eps, then dt.
  std::vector<SweepCell> cells;

  bool ok() const;
};

/// Full (scheme, eps, dt) matrix. One RK4 reference and one asymptotic
/// reference per eps, then every cell, all on the OpenMP pool. Writes
/// sweep_errors.csv and, if any cell failed, sweep_failures.csv.
SweepResult run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& outdir);

/// Writes sweep_a.gp (error vs reference) and sweep_b.gp (error vs asymptotic
/// model). Returns the scripts written; an empty sweep writes none and adds a
/// line to `warnings`. Throws MissingData if sweep_errors.csv is absent.
std::vector<std::filesystem::path> emit_plot_scripts(const SweepResult& result, const std::filesystem::path& outdir,
                                                     std::vector<std::string>* warnings = nullptr);

/// Time-series script for one single run (mu, v_par, r-z projection, 3D orbit).
/// Throws MissingData if the trajectory CSV is absent.
std::filesystem::path emit_timeseries_script(const SingleRun& run, const std::filesystem::path& outdir);

}  // namespace torus
