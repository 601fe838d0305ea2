// Command-line front end: single runs, sweeps and fixture regeneration.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "torus_pusher/config.hpp"
#include "torus_pusher/ensemble.hpp"
#include "torus_pusher/errors.hpp"
#include "torus_pusher/experiment.hpp"

namespace fs = std::filesystem;
using namespace torus;

namespace {

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& scheme,
                 const std::optional<double>& eps, const std::optional<double>& dt,
                 const std::optional<std::string>& out) {
  ExperimentConfig cfg = load_config(config_path);
  if (scheme) {
    cfg.schemes = {parse_scheme(*scheme)};
  }
  if (eps) {
    cfg.eps = {*eps};
  }
  if (dt) {
    cfg.dt = {*dt};
  }
  const fs::path outdir = out ? fs::path(*out) : fs::path(cfg.output_dir);

  int status = 0;
  for (Scheme s : cfg.schemes) {
    for (double e : cfg.eps) {
      for (double d : cfg.dt) {
        const SingleRun run = run_single(cfg, s, e, d, outdir);
        emit_timeseries_script(run, outdir);
        if (!run.trajectory.ok()) {
          std::fprintf(stderr, "%s eps=%s dt=%s failed at t=%s: %s\n", std::string(to_string(s)).c_str(),
                       format_tag(e).c_str(), format_tag(d).c_str(),
                       format_double(run.trajectory.failure->time).c_str(),
                       run.trajectory.failure->message.c_str());
          status = 1;
        } else {
          std::printf("%s\n", run.trajectory_csv.string().c_str());
        }
      }
    }
  }
  return status;
}

int cmd_sweep(const std::string& config_path, const std::string& out) {
  const ExperimentConfig cfg = load_config(config_path);
  const SweepResult result = run_sweep(cfg, out);
  std::vector<std::string> warnings;
  emit_plot_scripts(result, out, &warnings);
  for (const std::string& w : warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  for (const SweepCell& c : result.cells) {
    if (c.failure) {
      std::fprintf(stderr, "%s eps=%s dt=%s failed at t=%s: %s\n", std::string(to_string(c.scheme)).c_str(),
                   format_tag(c.eps).c_str(), format_tag(c.dt).c_str(), format_double(c.failure->time).c_str(),
                   c.failure->message.c_str());
    }
  }
  std::printf("%zu cells written to %s\n", result.cells.size(), (fs::path(out) / "sweep_errors.csv").c_str());
  return result.ok() ? 0 : 1;
}

constexpr const char* kReferenceFixture = "reference_screw_eps1e-2.csv";
constexpr const char* kImexFixture = "imex2_screw_eps1e-2_dt2e-3.txt";

int cmd_fixtures(bool regenerate, const fs::path& dir) {
  if (!regenerate) {
    int missing = 0;
    for (const char* name : {kReferenceFixture, kImexFixture}) {
      const bool present = fs::exists(dir / name);
      std::printf("%-40s %s\n", name, present ? "present" : "missing");
      missing += present ? 0 : 1;
    }
    std::printf("pass --regenerate to rebuild\n");
    return missing ? 1 : 0;
  }

  const ExperimentConfig cfg;  // screw-field defaults
  const std::unique_ptr<FieldModel> fm = make_field_model(cfg);
  const AugmentedState a0 = initial_state(cfg, *fm);
  const double eps = 1e-2;
  const double dt = 2e-3;

  const Trajectory fine = integrate(Scheme::rk4, a0, 0.0, cfg.tfinal, 1e-7, eps, *fm, {20000});
  const Trajectory check = integrate(Scheme::rk4, a0, 0.0, cfg.tfinal, 2e-7, eps, *fm, {10000});
  if (!fine.ok() || !check.ok()) {
    std::fprintf(stderr, "reference run failed\n");
    return 1;
  }
  // RK4: halving the step cuts the error by 16, so the gap bounds the error of the fine run by gap / 15
  const double gap = linf_position_error(fine, check, fm->torus());
  std::printf("reference self-check: |X(1e-7) - X(2e-7)| = %s, estimated error %s\n", format_double(gap).c_str(),
              format_double(gap / 15.0).c_str());

  fs::create_directories(dir);
  {
    std::ofstream out(dir / kReferenceFixture, std::ios::binary);
    out << "t,r,theta,phi,vpar,bmu,u_r,u_perp\n";
    for (std::size_t i = 0; i < fine.size(); ++i) {
      const AugmentedState& a = fine.states[i];
      out << format_double(fine.times[i]) << ',' << format_double(a.slow.r) << ',' << format_double(a.slow.theta)
          << ',' << format_double(a.slow.phi) << ',' << format_double(a.slow.vpar) << ','
          << format_double(a.slow.bmu) << ',' << format_double(a.fast.u_r) << ',' << format_double(a.fast.u_perp)
          << '\n';
    }
  }
  const Trajectory imex = integrate(Scheme::imex2, a0, 0.0, cfg.tfinal, dt, eps, *fm);
  const double err = linf_position_error(imex, fine, fm->torus());
  {
    std::ofstream out(dir / kImexFixture, std::ios::binary);
    out << format_double(err) << '\n';
  }
  std::printf("imex2 eps=1e-2 dt=2e-3 error vs reference: %s\n", format_double(err).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charged-particle pusher in toroidal magnetic fields"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> scheme;
  std::optional<double> eps;
  std::optional<double> dt;
  std::optional<std::string> sim_out;
  auto* simulate = app.add_subcommand("simulate", "Run single trajectories and write their CSV files");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--scheme", scheme, "Override the scheme list");
  simulate->add_option("--eps", eps, "Override the eps list");
  simulate->add_option("--dt", dt, "Override the dt list");
  simulate->add_option("--out", sim_out, "Output directory");

  std::string sweep_config;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Error sweep over (scheme, eps, dt)");
  sweep->add_option("--config", sweep_config, "Config file")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();

  bool regenerate = false;
  std::string fixture_dir = "tests/fixtures";
  auto* fixtures = app.add_subcommand("fixtures", "Check or rebuild the derived reference fixtures");
  fixtures->add_flag("--regenerate", regenerate, "Recompute and overwrite the fixtures");
  fixtures->add_option("--dir", fixture_dir, "Fixture directory");

  CLI11_PARSE(app, argc, argv);
  configure_threads();

  try {
    if (*simulate) {
      return cmd_simulate(config_path, scheme, eps, dt, sim_out);
    }
    if (*sweep) {
      return cmd_sweep(sweep_config, sweep_out);
    }
    return cmd_fixtures(regenerate, fixture_dir);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
