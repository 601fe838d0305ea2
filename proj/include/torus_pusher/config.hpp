#pragma once

#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "torus_pusher/integrators.hpp"

namespace torus {

enum class VelocityFrame { cartesian, rtp };

/// Everything an experiment needs. Defaults reproduce the screw-field setup.
struct ExperimentConfig {
  std::string field = "screw";
  TorusParams torus;
  DomainGuard guard;
  double b0 = 50.0;
  double b1 = 10.0;
  double psi_scale = 5.0;
  double potential_scale = -2.0;

  double r0 = 1.5;
  double theta0 = std::numbers::pi / 6.0;
  double phi0 = std::numbers::pi / 8.0;
  Vec3 v0{10.0, 10.0, 5.0};
  VelocityFrame initial_velocity_frame = VelocityFrame::cartesian;

  std::vector<double> eps{1e-2};
  std::vector<double> dt{2e-3};
  std::vector<Scheme> schemes{Scheme::imex2};
  double tfinal = 0.5;
  std::size_t stride = 1;

  bool reference_enabled = true;
  double reference_dt = 1e-7;
  Scheme asymptotic_scheme = Scheme::limit2_eff;
  double asymptotic_dt = 1e-5;
  bool boris_staggered = false;
  std::int64_t max_steps = 100000000;
  std::string output_dir = "out";

  /// Throws ValidationError naming the first violated constraint.
  void validate() const;
  IntegrateOptions integrate_options() const;
};

/// Flat `key = value` text, `#` comments, comma-separated lists. Unknown keys
/// and malformed values raise ParseError with the line number. Numbers also
/// accept the forms `pi`, `pi/6`, `2*pi/3`.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

std::unique_ptr<FieldModel> make_field_model(const ExperimentConfig& cfg);

/// Initial augmented state built from (r0, theta0, phi0, V0) in the configured frame.
AugmentedState initial_state(const ExperimentConfig& cfg, const FieldModel& fm);

}  // namespace torus
