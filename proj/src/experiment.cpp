#include "torus_pusher/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string run_stem(Scheme scheme, double eps, double dt) {
  return std::string(to_string(scheme)) + "_" + format_tag(eps) + "_" + format_tag(dt);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write '" + path.string() + "'");
  }
  return out;
}

void write_trajectory_csv(const fs::path& path, const Trajectory& traj, const FieldModel& fm) {
  std::ofstream out = open_out(path);
  out << "t,r,theta,phi,vpar,bmu,u_r,u_perp,x,y,z,energy,mu\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const AugmentedState& a = traj.states[i];
    const Vec3 x = toroidal_to_cartesian(a.slow.point(), fm.torus());
    const std::optional<double> phi = fm.potential(a.slow.point());
    const double energy = phi ? kinetic_energy(a.slow) + *phi : kNaN;
    const double values[] = {traj.times[i], a.slow.r,    a.slow.theta, a.slow.phi, a.slow.vpar,
                             a.slow.bmu,    a.fast.u_r,  a.fast.u_perp, x.x,       x.y,
                             x.z,           energy,      adiabatic_mu(a, fm)};
    for (std::size_t k = 0; k < std::size(values); ++k) {
      out << (k ? "," : "") << format_double(values[k]);
    }
    out << '\n';
  }
}

void write_invariants_csv(const fs::path& path, const std::vector<InvariantSeries>& series) {
  std::ofstream out = open_out(path);
  out << "t";
  for (const InvariantSeries& s : series) {
    out << ',' << to_string(s.kind);
  }
  out << '\n';
  const std::size_t n = series.empty() ? 0 : series.front().times.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << format_double(series.front().times[i]);
    for (const InvariantSeries& s : series) {
      out << ',' << format_double(s.values[i]);
    }
    out << '\n';
  }
}

/// Largest sampling stride of a fine run whose grid still contains every coarse time.
std::size_t nested_stride(const std::vector<double>& coarse_dts, double fine_dt) {
  std::size_t g = 0;
  for (double dt : coarse_dts) {
    g = std::gcd(g, static_cast<std::size_t>(std::llround(dt / fine_dt)));
  }
  return std::max<std::size_t>(g, 1);
}

bool cell_less(const SweepCell& a, const SweepCell& b) {
  const auto key = [](const SweepCell& c) { return std::make_tuple(to_string(c.scheme), c.eps, c.dt); };
  return key(a) < key(b);
}

std::string gp_quote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

SingleRun run_single(const ExperimentConfig& cfg, Scheme scheme, double eps, double dt, const fs::path& outdir) {
  const std::unique_ptr<FieldModel> fm = make_field_model(cfg);
  const AugmentedState a0 = initial_state(cfg, *fm);
  if (step_count(0.0, cfg.tfinal, dt) > cfg.max_steps) {
    throw ValidationError("dt = " + format_double(dt) + " exceeds the step budget");
  }

  SingleRun run;
  run.trajectory = integrate(scheme, a0, 0.0, cfg.tfinal, dt, eps, *fm, cfg.integrate_options());
  for (Invariant q : {Invariant::total_energy, Invariant::kinetic_energy, Invariant::bmu, Invariant::mu,
                      Invariant::r}) {
    run.invariants.push_back(invariant_series(run.trajectory, q, *fm));
  }

  fs::create_directories(outdir);
  const std::string stem = run_stem(scheme, eps, dt);
  run.trajectory_csv = outdir / ("traj_" + stem + ".csv");
  run.invariants_csv = outdir / ("invariants_" + stem + ".csv");
  write_trajectory_csv(run.trajectory_csv, run.trajectory, *fm);
  write_invariants_csv(run.invariants_csv, run.invariants);
  return run;
}

bool SweepResult::ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.failure; });
}

SweepResult run_sweep(const ExperimentConfig& cfg, const fs::path& outdir) {
  cfg.validate();
  const std::unique_ptr<FieldModel> fm = make_field_model(cfg);
  const AugmentedState a0 = initial_state(cfg, *fm);
  const std::size_t n_eps = cfg.eps.size();

  // references: slot 2k is the RK4 run for eps[k], slot 2k + 1 the asymptotic one
  std::vector<Trajectory> refs(cfg.reference_enabled ? 2 * n_eps : 0);
  const std::size_t ref_stride = nested_stride(cfg.dt, cfg.reference_dt);
  const std::size_t asym_stride = nested_stride(cfg.dt, cfg.asymptotic_dt);
  const auto n_refs = static_cast<std::int64_t>(refs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n_refs; ++i) {
    const double eps = cfg.eps[static_cast<std::size_t>(i / 2)];
    if (i % 2 == 0) {
      refs[i] = integrate(Scheme::rk4, a0, 0.0, cfg.tfinal, cfg.reference_dt, eps, *fm, {ref_stride});
    } else {
      refs[i] = integrate(cfg.asymptotic_scheme, a0, 0.0, cfg.tfinal, cfg.asymptotic_dt, eps, *fm, {asym_stride});
    }
  }

  SweepResult result;
  for (Scheme s : cfg.schemes) {
    for (std::size_t k = 0; k < n_eps; ++k) {
      for (double dt : cfg.dt) {
        result.cells.push_back({s, cfg.eps[k], dt, kNaN, kNaN, std::nullopt});
      }
    }
  }
  std::sort(result.cells.begin(), result.cells.end(), cell_less);

  const auto n_cells = static_cast<std::int64_t>(result.cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n_cells; ++i) {
    SweepCell& cell = result.cells[i];
    const std::size_t k = static_cast<std::size_t>(
        std::find(cfg.eps.begin(), cfg.eps.end(), cell.eps) - cfg.eps.begin());
    const Trajectory traj = integrate(cell.scheme, a0, 0.0, cfg.tfinal, cell.dt, cell.eps, *fm,
                                      {1, cfg.integrate_options().boris});
    if (!traj.ok()) {
      cell.failure = traj.failure;
      continue;
    }
    if (refs.empty()) {
      continue;
    }
    const Trajectory& ref = refs[2 * k];
    const Trajectory& asym = refs[2 * k + 1];
    if (!ref.ok()) {
      cell.failure = RunFailure{ref.failure->time, "reference run failed: " + ref.failure->message};
      continue;
    }
    if (!asym.ok()) {
      cell.failure = RunFailure{asym.failure->time, "asymptotic reference failed: " + asym.failure->message};
      continue;
    }
    cell.err_vs_reference = linf_position_error(traj, ref, fm->torus());
    cell.err_vs_asymptotic = linf_position_error(traj, asym, fm->torus());
  }

  fs::create_directories(outdir);
  {
    std::ofstream out = open_out(outdir / "sweep_errors.csv");
    out << "scheme,eps,dt,err_vs_reference,err_vs_asymptotic\n";
    for (const SweepCell& c : result.cells) {
      out << to_string(c.scheme) << ',' << format_double(c.eps) << ',' << format_double(c.dt) << ','
          << format_double(c.err_vs_reference) << ',' << format_double(c.err_vs_asymptotic) << '\n';
    }
  }
  const fs::path failures = outdir / "sweep_failures.csv";
  if (!result.ok()) {
    std::ofstream out = open_out(failures);
    out << "scheme,eps,dt,time,message\n";
    for (const SweepCell& c : result.cells) {
      if (c.failure) {
        std::string msg = c.failure->message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        out << to_string(c.scheme) << ',' << format_double(c.eps) << ',' << format_double(c.dt) << ','
            << format_double(c.failure->time) << ',' << msg << '\n';
      }
    }
  } else {
    fs::remove(failures);
  }
  return result;
}

std::vector<fs::path> emit_plot_scripts(const SweepResult& result, const fs::path& outdir,
                                        std::vector<std::string>* warnings) {
  if (!fs::exists(outdir / "sweep_errors.csv")) {
    throw MissingData("no sweep_errors.csv in '" + outdir.string() + "'");
  }
  if (result.cells.empty()) {
    if (warnings) {
      warnings->push_back("empty sweep: no plot script written");
    }
    return {};
  }

  std::set<std::pair<std::string, double>> curves;
  for (const SweepCell& c : result.cells) {
    curves.emplace(std::string(to_string(c.scheme)), c.eps);
  }

  const struct {
    const char* name;
    int column;
    const char* ylabel;
  } panels[] = {{"sweep_a", 4, "error vs reference"}, {"sweep_b", 5, "error vs asymptotic model"}};

  std::vector<fs::path> written;
  for (const auto& panel : panels) {
    const fs::path path = outdir / (std::string(panel.name) + ".gp");
    std::ofstream out = open_out(path);
    out << "set datafile separator ','\n"
        << "set terminal pngcairo size 900,650\n"
        << "set output " << gp_quote(std::string(panel.name) + ".png") << "\n"
        << "set logscale xy\n"
        << "set format x '10^{%L}'\n"
        << "set format y '10^{%L}'\n"
        << "set xlabel 'dt'\n"
        << "set ylabel " << gp_quote(panel.ylabel) << "\n"
        << "set key outside right\n"
        << "plot \\\n";
    std::size_t i = 0;
    for (const auto& [scheme, eps] : curves) {
      out << "  'sweep_errors.csv' skip 1 using 3:((strcol(1) eq \"" << scheme << "\" && $2 == "
          << format_double(eps) << ") ? $" << panel.column << " : 1/0) with linespoints title "
          << gp_quote(scheme + " eps=" + format_tag(eps)) << (++i < curves.size() ? ", \\\n" : "\n");
    }
    written.push_back(path);
  }
  return written;
}

fs::path emit_timeseries_script(const SingleRun& run, const fs::path& outdir) {
  if (run.trajectory_csv.empty() || !fs::exists(run.trajectory_csv)) {
    throw MissingData("trajectory CSV missing for time-series script");
  }
  const std::string data = run.trajectory_csv.filename().string();
  const std::string stem = run.trajectory_csv.stem().string();
  const fs::path path = outdir / ("plot_" + stem + ".gp");
  std::ofstream out = open_out(path);
  out << "set datafile separator ','\n"
      << "set terminal pngcairo size 1200,900\n"
      << "set output " << gp_quote(stem + ".png") << "\n"
      << "set multiplot layout 2,2\n"
      << "set xlabel 't'\n"
      << "set ylabel 'mu'\n"
      << "plot " << gp_quote(data) << " skip 1 using 1:13 with lines notitle\n"
      << "set ylabel 'v_par'\n"
      << "plot " << gp_quote(data) << " skip 1 using 1:5 with lines notitle\n"
      << "set xlabel 'R'\n"
      << "set ylabel 'z'\n"
      << "set size ratio -1\n"
      << "plot " << gp_quote(data) << " skip 1 using (sqrt($9*$9 + $10*$10)):11 with lines notitle\n"
      << "set size noratio\n"
      << "set xlabel 'x'\n"
      << "set ylabel 'y'\n"
      << "set zlabel 'z'\n"
      << "splot " << gp_quote(data) << " skip 1 using 9:10:11 with lines notitle\n"
      << "unset multiplot\n";
  return path;
}

}  // namespace torus
