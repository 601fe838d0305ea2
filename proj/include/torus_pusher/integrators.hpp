#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "torus_pusher/dynamics.hpp"

namespace torus {

/// Constants of the two-stage L-stable SDIRK tableau.
struct SdirkConstants {
  /// Smallest root of X^2 - 2X + 1/2.
  static inline const double sdirk_gamma = 1.0 - 1.0 / std::sqrt(2.0);
  /// Stage time offset in units of dt.
  static inline const double stage_offset = 1.0 / (2.0 * sdirk_gamma);
  /// Weight of Z^(1) in the intermediate blend.
  static inline const double blend_weight = 1.0 / (2.0 * sdirk_gamma * sdirk_gamma);
};

/// Classical four-stage Runge-Kutta step for any state with + and scalar *.
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, double t, const State& y, double dt) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + dt / 2.0, y + k1 * (dt / 2.0));
  const State k3 = rhs(t + dt / 2.0, y + k2 * (dt / 2.0));
  const State k4 = rhs(t + dt, y + k3 * dt);
  return y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

enum class BorisVariant {
  /// Fields at x^n, then x^{n+1} = x^n + dt v^{n+1}.
  unstaggered,
  /// Drift half a step, kick with fields there, drift the second half.
  staggered,
};

/// Boris push with fields from `field_at(position)`.
template <class FieldFn>
  requires std::invocable<FieldFn, const Vec3&>
PhysicalState boris_step(const PhysicalState& s, double dt, double eps, FieldFn&& field_at,
                         BorisVariant variant = BorisVariant::unstaggered) {
  const bool staggered = variant == BorisVariant::staggered;
  const Vec3 kick_position = staggered ? s.position + s.velocity * (dt / 2.0) : s.position;
  const CartesianField f = field_at(kick_position);

  const Vec3 v_minus = s.velocity + f.electric * (dt / 2.0);
  const Vec3 t_vec = f.magnetic * (dt / (2.0 * eps));
  const Vec3 s_vec = t_vec * (2.0 / (1.0 + dot(t_vec, t_vec)));
  const Vec3 v_prime = v_minus + cross(v_minus, t_vec);
  const Vec3 v_plus = v_minus + cross(v_prime, s_vec);
  const Vec3 v_next = v_plus + f.electric * (dt / 2.0);

  const Vec3 x_next = staggered ? kick_position + v_next * (dt / 2.0) : s.position + v_next * dt;
  return {x_next, v_next};
}

PhysicalState boris_step(const PhysicalState& s, double dt, double eps, const FieldModel& fm,
                         BorisVariant variant = BorisVariant::unstaggered);

/// Solves (Id - a J0) u = rhs in closed form.
FastState solve_stiff(double a, const FastState& rhs);

/// Backward/forward Euler semi-implicit step of the augmented system.
AugmentedState imex1_step(const AugmentedState& a, double t, double dt, double eps, const FieldModel& fm);

/// Two-stage IMEX step: explicit RK for the slow part, L-stable SDIRK for the stiff part.
AugmentedState imex2_step(const AugmentedState& a, double t, double dt, double eps, const FieldModel& fm);

/// Forward Euler on F(t, Z, 0).
SlowState limit1_step(const SlowState& z, double t, double dt, const FieldModel& fm);
/// Forward Euler on F(t, Y, eps U(t, Y, 0) / b).
SlowState limit1_eff_step(const SlowState& y, double t, double dt, double eps, const FieldModel& fm);
/// Two-stage explicit rule (weights 1 - gamma, gamma) on F(t, Z, 0).
SlowState limit2_step(const SlowState& z, double t, double dt, const FieldModel& fm);
/// Same rule on the effective second-order system.
SlowState limit2_eff_step(const SlowState& y, double t, double dt, double eps, const FieldModel& fm);

enum class Scheme : std::uint8_t { rk4, boris, imex1, imex2, limit1, limit2, limit1_eff, limit2_eff };

std::string_view to_string(Scheme s);
/// Throws ValidationError for unknown names.
Scheme parse_scheme(std::string_view name);
/// True for schemes whose state carries the slow variables only.
bool is_limit_scheme(Scheme s);

struct RunFailure {
  double time = 0.0;
  std::string message;
};

/// Sampled run. Every sample is stored as an augmented state with unwrapped
/// angles; schemes without a fast variable store u = 0 (limit1, limit2) or
/// the slaved value eps U(Z, 0) / b (limit1_eff, limit2_eff).
struct Trajectory {
  Scheme scheme = Scheme::rk4;
  double eps = 0.0;
  double dt = 0.0;
  std::string field;
  std::vector<double> times;
  std::vector<AugmentedState> states;
  std::optional<RunFailure> failure;

  std::size_t size() const noexcept { return times.size(); }
  bool ok() const noexcept { return !failure.has_value(); }
};

struct IntegrateOptions {
  std::size_t stride = 1;
  BorisVariant boris = BorisVariant::unstaggered;
};

/// Number of whole steps of size dt that fit in [t0, tfinal].
std::int64_t step_count(double t0, double tfinal, double dt);

/// Runs `scheme` from `initial` and samples every `stride` steps plus the final
/// step. Failures stop the run and are reported in Trajectory::failure with
/// the samples gathered so far.
Trajectory integrate(Scheme scheme, const AugmentedState& initial, double t0, double tfinal, double dt,
                     double eps, const FieldModel& fm, const IntegrateOptions& opts = {});
Trajectory integrate(Scheme scheme, const PhysicalState& initial, double t0, double tfinal, double dt,
                     double eps, const FieldModel& fm, const IntegrateOptions& opts = {});

}  // namespace torus
