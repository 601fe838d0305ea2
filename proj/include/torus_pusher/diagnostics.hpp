#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torus_pusher/integrators.hpp"

namespace torus {

/// v_par^2 / 2 + b mu + potential. Throws MissingPotential if the model has none.
double total_energy(const SlowState& z, const FieldModel& fm);
double total_energy(const AugmentedState& a, const FieldModel& fm);

/// v_par^2 / 2 + b mu.
inline double kinetic_energy(const SlowState& z) { return 0.5 * z.vpar * z.vpar + z.bmu; }

/// b mu / b.
double adiabatic_mu(const SlowState& z, const FieldModel& fm);
double adiabatic_mu(const AugmentedState& a, const FieldModel& fm);

inline double kinetic_energy_cartesian(const PhysicalState& s) { return 0.5 * dot(s.velocity, s.velocity); }

/// |q - q0| / max(|q0|, 1).
double relative_drift(double q, double q0);

enum class Invariant { total_energy, kinetic_energy, bmu, mu, r };

std::string_view to_string(Invariant q);

struct InvariantSeries {
  Invariant kind = Invariant::kinetic_energy;
  std::vector<double> times;
  std::vector<double> values;

  double max_abs_deviation() const;
  double max_relative_drift() const;
};

InvariantSeries invariant_series(const Trajectory& traj, Invariant kind, const FieldModel& fm);

/// Max over common sample times of the Cartesian distance between positions.
/// Every time of `traj` must be present in `ref`, else TimeGridMismatch.
double linf_position_error(const Trajectory& traj, const Trajectory& ref, const TorusParams& tp);

/// Same matching rule, Euclidean norm on the slow unknowns.
double linf_slow_error(const Trajectory& traj, const Trajectory& ref);

/// Indices into `ref` of every sample time of `traj`.
std::vector<std::size_t> match_times(const std::vector<double>& times, const std::vector<double>& ref_times);

/// Least-squares slope of log(error) against log(dt).
double observed_order(const std::vector<std::pair<double, double>>& dt_error);

struct RZPoint {
  double big_r = 0.0;
  double z = 0.0;
};

std::vector<RZPoint> rz_projection(const Trajectory& traj, const TorusParams& tp);

struct ErrorReport {
  Scheme scheme = Scheme::rk4;
  double eps = 0.0;
  double dt = 0.0;
  double linf_position = 0.0;
  std::vector<std::pair<Invariant, double>> drifts;
  std::vector<double> observed_orders;
};

}  // namespace torus
