#include "torus_pusher/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

template <class Distance>
double linf_over_matches(const Trajectory& traj, const Trajectory& ref, Distance&& distance) {
  const std::vector<std::size_t> idx = match_times(traj.times, ref.times);
  double worst = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    worst = std::max(worst, distance(traj.states[i], ref.states[idx[i]]));
  }
  return worst;
}

}  // namespace

double total_energy(const SlowState& z, const FieldModel& fm) {
  const std::optional<double> phi = fm.potential(z.point());
  if (!phi) {
    throw MissingPotential("field model '" + fm.name() + "' has no electrostatic potential");
  }
  return kinetic_energy(z) + *phi;
}

double total_energy(const AugmentedState& a, const FieldModel& fm) { return total_energy(a.slow, fm); }

double adiabatic_mu(const SlowState& z, const FieldModel& fm) { return z.bmu / fm.evaluate(z.point()).b; }

double adiabatic_mu(const AugmentedState& a, const FieldModel& fm) { return adiabatic_mu(a.slow, fm); }

double relative_drift(double q, double q0) { return std::abs(q - q0) / std::max(std::abs(q0), 1.0); }

std::string_view to_string(Invariant q) {
  switch (q) {
    case Invariant::total_energy:
      return "energy";
    case Invariant::kinetic_energy:
      return "kinetic";
    case Invariant::bmu:
      return "bmu";
    case Invariant::mu:
      return "mu";
    case Invariant::r:
      return "r";
  }
  return "?";
}

double InvariantSeries::max_abs_deviation() const {
  double worst = 0.0;
  for (double v : values) {
    worst = std::max(worst, std::abs(v - values.front()));
  }
  return worst;
}

double InvariantSeries::max_relative_drift() const {
  double worst = 0.0;
  for (double v : values) {
    worst = std::max(worst, relative_drift(v, values.front()));
  }
  return worst;
}

InvariantSeries invariant_series(const Trajectory& traj, Invariant kind, const FieldModel& fm) {
  InvariantSeries out;
  out.kind = kind;
  out.times = traj.times;
  out.values.reserve(traj.size());
  for (const AugmentedState& a : traj.states) {
    switch (kind) {
      case Invariant::total_energy:
        out.values.push_back(total_energy(a, fm));
        break;
      case Invariant::kinetic_energy:
        out.values.push_back(kinetic_energy(a.slow));
        break;
      case Invariant::bmu:
        out.values.push_back(a.slow.bmu);
        break;
      case Invariant::mu:
        out.values.push_back(adiabatic_mu(a, fm));
        break;
      case Invariant::r:
        out.values.push_back(a.slow.r);
        break;
    }
  }
  return out;
}

std::vector<std::size_t> match_times(const std::vector<double>& times, const std::vector<double>& ref_times) {
  std::vector<std::size_t> idx;
  idx.reserve(times.size());
  std::size_t j = 0;
  for (double t : times) {
    while (j < ref_times.size() && ref_times[j] < t && !same_time(ref_times[j], t)) {
      ++j;
    }
    if (j == ref_times.size() || !same_time(ref_times[j], t)) {
      throw TimeGridMismatch("reference has no sample at t = " + std::to_string(t));
    }
    idx.push_back(j);
  }
  return idx;
}

double linf_position_error(const Trajectory& traj, const Trajectory& ref, const TorusParams& tp) {
  return linf_over_matches(traj, ref, [&tp](const AugmentedState& a, const AugmentedState& b) {
    return norm(toroidal_to_cartesian(a.slow.point(), tp) - toroidal_to_cartesian(b.slow.point(), tp));
  });
}

double linf_slow_error(const Trajectory& traj, const Trajectory& ref) {
  return linf_over_matches(traj, ref,
                           [](const AugmentedState& a, const AugmentedState& b) { return norm(a.slow - b.slow); });
}

double observed_order(const std::vector<std::pair<double, double>>& dt_error) {
  if (dt_error.size() < 2) {
    throw InsufficientData("need at least two (dt, error) pairs");
  }
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [dt, err] : dt_error) {
    if (!(dt > 0.0) || !(err > 0.0)) {
      throw InsufficientData("dt and error must be positive");
    }
    sx += std::log(dt);
    sy += std::log(err);
  }
  const double n = static_cast<double>(dt_error.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [dt, err] : dt_error) {
    const double dx = std::log(dt) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (sxx == 0.0) {
    throw InsufficientData("all dt values coincide");
  }
  return sxy / sxx;
}

std::vector<RZPoint> rz_projection(const Trajectory& traj, const TorusParams& tp) {
  std::vector<RZPoint> out;
  out.reserve(traj.size());
  for (const AugmentedState& a : traj.states) {
    out.push_back({major_radius_at(a.slow.r, a.slow.theta, tp), a.slow.r * std::sin(a.slow.theta)});
  }
  return out;
}

}  // namespace torus
