#include "torus_pusher/integrators.hpp"

#include <array>
#include <cmath>
#include <exception>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace {

constexpr std::array<std::string_view, 8> kSchemeNames = {
    "rk4", "boris", "imex1", "imex2", "limit1", "limit2", "limit1_eff", "limit2_eff"};

SlowState blend(const SlowState& from, const SlowState& to, double w) { return from * (1.0 - w) + to * w; }
FastState blend(const FastState& from, const FastState& to, double w) { return from * (1.0 - w) + to * w; }

// Shared two-stage explicit rule used by the limit schemes: hat stage at
// t + dt / (2 gamma), weights (1 - gamma, gamma).
template <class SlavedU>
SlowState two_stage_explicit(const SlowState& z, double dt, const FieldModel& fm, SlavedU&& slaved) {
  const double g = SdirkConstants::sdirk_gamma;
  const LocalField lf0 = local_field(fm, z);
  const SlowState f0 = slow_rhs(z, slaved(z, lf0), lf0);
  const SlowState z_hat = z + f0 * (dt * SdirkConstants::stage_offset);
  const LocalField lf_hat = local_field(fm, z_hat);
  const SlowState f_hat = slow_rhs(z_hat, slaved(z_hat, lf_hat), lf_hat);
  return z + (f0 * (1.0 - g) + f_hat * g) * dt;
}

template <class State, class Step, class ToSample>
void run_loop(Trajectory& traj, State state, std::int64_t steps, double t0, double dt, std::size_t stride,
              Step&& step, ToSample&& to_sample) {
  const auto record = [&](std::int64_t n) {
    traj.times.push_back(t0 + static_cast<double>(n) * dt);
    traj.states.push_back(to_sample(state));
  };
  const auto stride_n = static_cast<std::int64_t>(stride);
  const std::size_t expected = static_cast<std::size_t>(steps / stride_n) + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);

  std::int64_t n = 0;
  try {
    record(0);
    for (n = 0; n < steps; ++n) {
      state = step(state, t0 + static_cast<double>(n) * dt);
      if ((n + 1) % stride_n == 0 || n + 1 == steps) {
        record(n + 1);
      }
    }
  } catch (const std::exception& e) {
    traj.failure = RunFailure{t0 + static_cast<double>(n) * dt, e.what()};
  }
}

struct BorisCarry {
  PhysicalState state;
  double theta = 0.0;
  double phi = 0.0;
};

}  // namespace

PhysicalState boris_step(const PhysicalState& s, double dt, double eps, const FieldModel& fm,
                         BorisVariant variant) {
  return boris_step(
      s, dt, eps, [&fm](const Vec3& x) { return cartesian_field(fm, x); }, variant);
}

FastState solve_stiff(double a, const FastState& rhs) {
  const double det = 1.0 + a * a;
  return {(rhs.u_r + a * rhs.u_perp) / det, (rhs.u_perp - a * rhs.u_r) / det};
}

AugmentedState imex1_step(const AugmentedState& a, double, double dt, double eps, const FieldModel& fm) {
  const LocalField lf = local_field(fm, a.slow);
  const FastState source = uperp_drift(a.slow, a.fast, lf);
  const double stiffness = lf.field.b * dt / eps;
  const FastState u_next = solve_stiff(stiffness, a.fast - rotate_j0(source) * dt);
  return {a.slow + slow_rhs(a.slow, u_next, lf) * dt, u_next};
}

AugmentedState imex2_step(const AugmentedState& a, double, double dt, double eps, const FieldModel& fm) {
  const double g = SdirkConstants::sdirk_gamma;
  const double w = SdirkConstants::blend_weight;

  // stage 1
  const LocalField lf0 = local_field(fm, a.slow);
  const double b0 = lf0.field.b;
  const FastState source0 = uperp_drift(a.slow, a.fast, lf0);
  const FastState u1 = solve_stiff(g * b0 * dt / eps, a.fast - rotate_j0(source0) * (g * dt));
  const SlowState f1 = slow_rhs(a.slow, u1, lf0);
  const SlowState z1 = a.slow + f1 * (g * dt);

  // intermediate state at t + dt / (2 gamma)
  const SlowState z_hat = blend(a.slow, z1, w);
  const FastState u_hat = blend(a.fast, u1, w);

  // stage 2
  const LocalField lf_hat = local_field(fm, z_hat);
  const double b_hat = lf_hat.field.b;
  const FastState source_hat = uperp_drift(z_hat, u_hat, lf_hat);
  const FastState explicit_part = (source0 - u1 * (b0 / eps)) * (1.0 - g) + source_hat * g;
  const FastState u_next = solve_stiff(g * b_hat * dt / eps, a.fast - rotate_j0(explicit_part) * dt);
  const SlowState f2 = slow_rhs(z_hat, u_next, lf_hat);
  return {a.slow + (f1 * (1.0 - g) + f2 * g) * dt, u_next};
}

SlowState limit1_step(const SlowState& z, double t, double dt, const FieldModel& fm) {
  return z + rhs_order1(t, z, fm) * dt;
}

SlowState limit1_eff_step(const SlowState& y, double t, double dt, double eps, const FieldModel& fm) {
  return y + rhs_order2(t, y, eps, fm) * dt;
}

SlowState limit2_step(const SlowState& z, double, double dt, const FieldModel& fm) {
  return two_stage_explicit(z, dt, fm, [](const SlowState&, const LocalField&) { return FastState{}; });
}

SlowState limit2_eff_step(const SlowState& y, double, double dt, double eps, const FieldModel& fm) {
  return two_stage_explicit(y, dt, fm, [eps](const SlowState& s, const LocalField& lf) {
    return effective_uperp(s, eps, lf);
  });
}

std::string_view to_string(Scheme s) { return kSchemeNames[static_cast<std::size_t>(s)]; }

Scheme parse_scheme(std::string_view name) {
  for (std::size_t i = 0; i < kSchemeNames.size(); ++i) {
    if (kSchemeNames[i] == name) {
      return static_cast<Scheme>(i);
    }
  }
  throw ValidationError("unknown scheme '" + std::string(name) + "'");
}

bool is_limit_scheme(Scheme s) {
  return s == Scheme::limit1 || s == Scheme::limit2 || s == Scheme::limit1_eff || s == Scheme::limit2_eff;
}

std::int64_t step_count(double t0, double tfinal, double dt) {
  if (!(dt > 0.0)) {
    throw ValidationError("time step must be positive");
  }
  if (!(tfinal >= t0)) {
    throw ValidationError("final time precedes initial time");
  }
  return static_cast<std::int64_t>(std::floor((tfinal - t0) / dt + 1e-9));
}

Trajectory integrate(Scheme scheme, const AugmentedState& initial, double t0, double tfinal, double dt,
                     double eps, const FieldModel& fm, const IntegrateOptions& opts) {
  if (opts.stride == 0) {
    throw ValidationError("sampling stride must be at least 1");
  }
  if (!(eps > 0.0)) {
    throw ValidationError("eps must be positive");
  }
  const std::int64_t steps = step_count(t0, tfinal, dt);

  Trajectory traj;
  traj.scheme = scheme;
  traj.eps = eps;
  traj.dt = dt;
  traj.field = fm.name();

  const auto identity = [](const AugmentedState& a) { return a; };
  const auto slow_only = [](const SlowState& z) { return AugmentedState{z, {}}; };
  const auto slaved = [&fm, eps](const SlowState& z) {
    return AugmentedState{z, effective_uperp(z, eps, local_field(fm, z))};
  };

  switch (scheme) {
    case Scheme::rk4: {
      const auto rhs = [&fm, eps](double t, const ToroidalState& s) { return rhs_full_toroidal(t, s, eps, fm); };
      run_loop(
          traj, toroidal_from_augmented(initial, fm), steps, t0, dt, opts.stride,
          [&rhs, dt](const ToroidalState& s, double t) { return rk4_step(rhs, t, s, dt); },
          [&fm](const ToroidalState& s) { return augmented_from_toroidal(s, fm); });
      break;
    }
    case Scheme::boris: {
      BorisCarry carry{physical_from_augmented(initial, fm), initial.slow.theta, initial.slow.phi};
      run_loop(
          traj, carry, steps, t0, dt, opts.stride,
          [&fm, dt, eps, &opts](const BorisCarry& c, double) {
            BorisCarry next;
            next.state = boris_step(c.state, dt, eps, fm, opts.boris);
            const ToroidalPoint p = cartesian_to_toroidal(next.state.position, fm.torus());
            next.theta = unwrap_angle(p.theta, c.theta);
            next.phi = unwrap_angle(p.phi, c.phi);
            return next;
          },
          [&fm](const BorisCarry& c) {
            AugmentedState a = augmented_from_physical(c.state, fm);
            a.slow.theta = c.theta;
            a.slow.phi = c.phi;
            return a;
          });
      break;
    }
    case Scheme::imex1:
      run_loop(
          traj, initial, steps, t0, dt, opts.stride,
          [&fm, dt, eps](const AugmentedState& a, double t) { return imex1_step(a, t, dt, eps, fm); }, identity);
      break;
    case Scheme::imex2:
      run_loop(
          traj, initial, steps, t0, dt, opts.stride,
          [&fm, dt, eps](const AugmentedState& a, double t) { return imex2_step(a, t, dt, eps, fm); }, identity);
      break;
    case Scheme::limit1:
      run_loop(
          traj, initial.slow, steps, t0, dt, opts.stride,
          [&fm, dt](const SlowState& z, double t) { return limit1_step(z, t, dt, fm); }, slow_only);
      break;
    case Scheme::limit2:
      run_loop(
          traj, initial.slow, steps, t0, dt, opts.stride,
          [&fm, dt](const SlowState& z, double t) { return limit2_step(z, t, dt, fm); }, slow_only);
      break;
    case Scheme::limit1_eff:
      run_loop(
          traj, initial.slow, steps, t0, dt, opts.stride,
          [&fm, dt, eps](const SlowState& z, double t) { return limit1_eff_step(z, t, dt, eps, fm); }, slaved);
      break;
    case Scheme::limit2_eff:
      run_loop(
          traj, initial.slow, steps, t0, dt, opts.stride,
          [&fm, dt, eps](const SlowState& z, double t) { return limit2_eff_step(z, t, dt, eps, fm); }, slaved);
      break;
  }
  return traj;
}

Trajectory integrate(Scheme scheme, const PhysicalState& initial, double t0, double tfinal, double dt,
                     double eps, const FieldModel& fm, const IntegrateOptions& opts) {
  return integrate(scheme, augmented_from_physical(initial, fm), t0, tfinal, dt, eps, fm, opts);
}

}  // namespace torus
