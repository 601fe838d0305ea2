#include "torus_pusher/fields.hpp"

#include <cmath>
#include <string>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace {

// Common structure of both bundled models: B_theta = g(r) / R, B_phi = B0 / R.
FieldSample poloidal_profile_sample(double g, double dg, double b0, const ToroidalPoint& p,
                                    const TorusParams& tp) {
  const double ct = std::cos(p.theta);
  const double st = std::sin(p.theta);
  const double big_r = tp.major_radius + p.r * ct;
  const double s = std::hypot(g, b0);

  FieldSample out;
  out.b = s / big_r;
  out.omega = std::atan2(g, b0);
  out.domega_dr = b0 * dg / (b0 * b0 + g * g);
  out.domega_dtheta = 0.0;
  out.db_dr = (g * dg / s) / big_r - s * ct / (big_r * big_r);
  out.db_dtheta = s * p.r * st / (big_r * big_r);
  return out;
}

}  // namespace

FieldModel::FieldModel(TorusParams torus, DomainGuard guard) : torus_(torus), guard_(guard) {
  torus_.validate();
}

void FieldModel::check_domain(double r) const {
  if (!(r >= guard_.r_min) || !(r <= torus_.major_radius - guard_.r_margin)) {
    throw DomainError("minor radius " + std::to_string(r) + " outside the field domain");
  }
}

FieldSample FieldModel::evaluate(const ToroidalPoint& p) const {
  check_domain(p.r);
  FieldSample s = sample(p);
  if (!(s.b > 0.0)) {
    throw DegenerateField(name() + " field magnitude vanishes");
  }
  return s;
}

std::optional<double> FieldModel::potential(const ToroidalPoint&) const { return std::nullopt; }

ScrewField::ScrewField(ScrewFieldParams params, TorusParams torus, DomainGuard guard)
    : FieldModel(torus, guard), params_(params) {
  if (!(params_.b0 > 0.0)) {
    throw ValidationError("screw field requires B0 > 0");
  }
}

FieldSample ScrewField::sample(const ToroidalPoint& p) const {
  return poloidal_profile_sample(params_.b1 * p.r, params_.b1, params_.b0, p, torus());
}

std::optional<double> ScrewField::potential(const ToroidalPoint&) const { return 0.0; }

SolovevField::SolovevField(SolovevFieldParams params, TorusParams torus, DomainGuard guard)
    : FieldModel(torus, guard), params_(params) {
  if (!(params_.b0 > 0.0)) {
    throw ValidationError("Solov'ev field requires B0 > 0");
  }
}

double SolovevField::psi(double r) const {
  return params_.psi_scale * (r * r / 2.0 - r * r * r / 3.0);
}

double SolovevField::dpsi(double r) const { return params_.psi_scale * r * (1.0 - r); }

FieldSample SolovevField::sample(const ToroidalPoint& p) const {
  const double g = dpsi(p.r);
  const double dg = params_.psi_scale * (1.0 - 2.0 * p.r);
  FieldSample s = poloidal_profile_sample(g, dg, params_.b0, p, torus());
  // the potential depends on r only, so E is purely radial
  s.e_r = -params_.potential_scale * g;
  return s;
}

std::optional<double> SolovevField::potential(const ToroidalPoint& p) const {
  return params_.potential_scale * psi(p.r);
}

GeometryCoefficients coefficients(const FieldSample& s, const ToroidalPoint& p, const TorusParams& tp) {
  const double r = p.r;
  const double big_r = major_radius_at(r, p.theta, tp);
  const double so = std::sin(s.omega);
  const double co = std::cos(s.omega);
  const double st = std::sin(p.theta);
  const double ct = std::cos(p.theta);

  GeometryCoefficients c;
  c.alpha = -s.domega_dtheta / r * so - st / big_r * co;
  c.beta = s.domega_dtheta / r * co - st / big_r * so;
  c.gamma_c = -so * so / r - ct / big_r * co * co;
  c.delta = -(ct / big_r - 1.0 / r) * so * co;
  c.zeta = co * co / r + ct / big_r * so * so;
  c.eta = -so / r * s.db_dtheta / s.b;
  c.kappa = co / r * s.db_dtheta / s.b;
  c.lambda = -s.db_dr / s.b;
  c.domega_dr = s.domega_dr;
  c.big_r = big_r;
  c.b = s.b;
  return c;
}

GeometryCoefficients coefficients(const FieldModel& fm, const ToroidalPoint& p) {
  return coefficients(fm.evaluate(p), p, fm.torus());
}

double divergence_residual(const FieldSample& s, const ToroidalPoint& p, const TorusParams& tp) {
  const double big_r = major_radius_at(p.r, p.theta, tp);
  const double so = std::sin(s.omega);
  const double co = std::cos(s.omega);
  return so / p.r * s.db_dtheta + s.b * (co / p.r * s.domega_dtheta - so / big_r * std::sin(p.theta));
}

double divergence_check(const FieldModel& fm, const ToroidalPoint& p) {
  return divergence_residual(fm.evaluate(p), p, fm.torus());
}

CartesianField cartesian_field(const FieldSample& s, const ToroidalPoint& p) {
  const FieldFrame f = field_aligned_frame(s.omega, p.theta, p.phi);
  return {s.b * f.e_par, s.e_r * f.e_r + s.e_perp * f.e_perp + s.e_par * f.e_par};
}

CartesianField cartesian_field(const FieldModel& fm, const CartesianPoint& x) {
  const ToroidalPoint p = cartesian_to_toroidal(x, fm.torus());
  return cartesian_field(fm.evaluate(p), p);
}

}  // namespace torus
