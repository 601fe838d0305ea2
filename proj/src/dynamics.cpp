#include "torus_pusher/dynamics.hpp"

#include <cmath>

namespace torus {

double norm(const SlowState& z) {
  return std::sqrt(z.r * z.r + z.phi * z.phi + z.theta * z.theta + z.vpar * z.vpar + z.bmu * z.bmu);
}

LocalField local_field(const FieldModel& fm, const SlowState& z) {
  const ToroidalPoint p = z.point();
  const FieldSample s = fm.evaluate(p);
  return {s, coefficients(s, p, fm.torus())};
}

PhysicalState rhs_cartesian(const PhysicalState& s, double eps, const CartesianField& f) {
  return {s.velocity, cross(s.velocity, f.magnetic) * (1.0 / eps) + f.electric};
}

PhysicalState rhs_cartesian(double, const PhysicalState& s, double eps, const FieldModel& fm) {
  return rhs_cartesian(s, eps, cartesian_field(fm, s.position));
}

ToroidalState rhs_full_toroidal(double, const ToroidalState& s, double eps, const FieldModel& fm) {
  const ToroidalPoint p{s.r, s.theta, s.phi};
  const FieldSample f = fm.evaluate(p);
  const double big_r = major_radius_at(s.r, s.theta, fm.torus());
  const double so = std::sin(f.omega);
  const double co = std::cos(f.omega);
  const double st = std::sin(s.theta);
  const double ct = std::cos(s.theta);

  const double b_theta = f.b * so;
  const double b_phi = f.b * co;
  const double e_theta = so * f.e_par - co * f.e_perp;
  const double e_phi = co * f.e_par + so * f.e_perp;

  ToroidalState d;
  d.r = s.v_r;
  d.theta = s.v_theta / s.r;
  d.phi = s.v_phi / big_r;
  d.v_r = (s.v_phi * b_theta - s.v_theta * b_phi) / eps + f.e_r + s.v_theta * s.v_theta / s.r +
          ct * s.v_phi * s.v_phi / big_r;
  d.v_theta = s.v_r * b_phi / eps + e_theta - s.v_r * s.v_theta / s.r - st * s.v_phi * s.v_phi / big_r;
  d.v_phi = -s.v_r * b_theta / eps + e_phi - ct * s.v_r * s.v_phi / big_r + st * s.v_theta * s.v_phi / big_r;
  return d;
}

double force_parallel(const SlowState& z, const FastState& u, const GeometryCoefficients& c) {
  const double b = c.b;
  const double mu = z.bmu / b;
  return b * ((c.gamma_c * u.u_r + c.alpha * u.u_perp) * z.vpar +
              b * (c.delta - c.domega_dr) * u.u_perp * u.u_r +
              c.beta * (mu + b * (u.u_perp * u.u_perp - u.u_r * u.u_r) / 2.0));
}

SlowState slow_rhs(const SlowState& z, const FastState& u, const LocalField& lf) {
  const FieldSample& f = lf.field;
  const double b = f.b;
  const double so = std::sin(f.omega);
  const double co = std::cos(f.omega);
  const double fpar = force_parallel(z, u, lf.coeff);
  return {b * u.u_r,
          (co * z.vpar + b * so * u.u_perp) / lf.coeff.big_r,
          (so * z.vpar - b * co * u.u_perp) / z.r,
          f.e_par + fpar,
          -z.vpar * fpar + b * (f.e_r * u.u_r + f.e_perp * u.u_perp)};
}

SlowState slow_rhs(double, const SlowState& z, const FastState& u, const FieldModel& fm) {
  return slow_rhs(z, u, local_field(fm, z));
}

FastState uperp_drift(const SlowState& z, const FastState& u, const LocalField& lf) {
  const FieldSample& f = lf.field;
  const GeometryCoefficients& c = lf.coeff;
  const double b = f.b;
  const double mu = z.bmu / b;
  const double vpar = z.vpar;
  const double ur = u.u_r;
  const double up = u.u_perp;
  const double half_split = b * (up * up - ur * ur) / 2.0;

  const double u_r = f.e_perp / b - c.alpha / b * vpar * vpar + (c.domega_dr + c.delta) * vpar * ur +
                     (c.eta - c.beta) * vpar * up + b * (c.lambda - c.zeta) * ur * up +
                     c.kappa * (mu + half_split);
  // the kappa u_r u_perp term carries a factor b; without it the augmented
  // system does not reduce to the Lorentz flow on the constraint manifold
  const double u_p = -f.e_r / b + 2.0 * c.delta * vpar * up - c.zeta * b * up * up +
                     c.gamma_c / b * vpar * vpar - c.eta * ur * vpar - c.kappa * b * ur * up -
                     c.lambda * (mu - half_split);
  return {u_r, u_p};
}

FastState uperp_drift(double, const SlowState& z, const FastState& u, const FieldModel& fm) {
  return uperp_drift(z, u, local_field(fm, z));
}

FastState limit_drift(const SlowState& z, const LocalField& lf) {
  const FieldSample& f = lf.field;
  const GeometryCoefficients& c = lf.coeff;
  const double v2 = z.vpar * z.vpar;
  return {f.e_perp - c.alpha * v2 + c.kappa * z.bmu, -f.e_r + c.gamma_c * v2 - c.lambda * z.bmu};
}

FastState limit_drift(double, const SlowState& z, const FieldModel& fm) {
  return limit_drift(z, local_field(fm, z));
}

FastState effective_uperp(const SlowState& z, double eps, const LocalField& lf) {
  const double b = lf.field.b;
  return limit_drift(z, lf) * (eps / (b * b));
}

AugmentedState augmented_rhs(double, const AugmentedState& a, double eps, const FieldModel& fm) {
  const LocalField lf = local_field(fm, a.slow);
  const FastState source = uperp_drift(a.slow, a.fast, lf) - a.fast * (lf.field.b / eps);
  // d(J0 u)/dt = source  =>  du/dt = -J0 source
  return {slow_rhs(a.slow, a.fast, lf), rotate_j0(source) * -1.0};
}

SlowState rhs_order1(double, const SlowState& z, const FieldModel& fm) {
  return slow_rhs(z, FastState{}, local_field(fm, z));
}

SlowState rhs_order2(double, const SlowState& z, double eps, const FieldModel& fm) {
  const LocalField lf = local_field(fm, z);
  return slow_rhs(z, effective_uperp(z, eps, lf), lf);
}

SlowState rhs_order2_expanded(double, const SlowState& z, double eps, const FieldModel& fm) {
  const ToroidalPoint p = z.point();
  const FieldSample f = fm.evaluate(p);
  const GeometryCoefficients c = coefficients(f, p, fm.torus());
  const double so = std::sin(f.omega);
  const double co = std::cos(f.omega);
  const double v2 = z.vpar * z.vpar;

  // drift velocity w = U(t, Z, 0)
  const double w_r = (f.e_perp - c.alpha * v2 + c.kappa * z.bmu) / f.b;
  const double w_p = (-f.e_r + c.gamma_c * v2 - c.lambda * z.bmu) / f.b;

  const double fpar = c.beta * z.bmu + eps * (c.gamma_c * w_r + c.alpha * w_p) * z.vpar +
                      eps * eps * ((c.delta - c.domega_dr) * w_p * w_r + c.beta * (w_p * w_p - w_r * w_r) / 2.0);
  return {eps * w_r,
          (co * z.vpar + eps * so * w_p) / c.big_r,
          (so * z.vpar - eps * co * w_p) / z.r,
          f.e_par + fpar,
          -z.vpar * fpar + eps * (f.e_r * w_r + f.e_perp * w_p)};
}

AugmentedState augmented_from_physical(const PhysicalState& s, const FieldModel& fm) {
  const ToroidalPoint p = cartesian_to_toroidal(s.position, fm.torus());
  const FieldSample f = fm.evaluate(p);
  const FieldFrameVelocity w = velocity_to_field_frame(s.velocity, f.omega, p.theta, p.phi);
  return {{p.r, p.phi, p.theta, w.v_par, (w.v_r * w.v_r + w.v_perp * w.v_perp) / 2.0},
          {w.v_r / f.b, w.v_perp / f.b}};
}

PhysicalState physical_from_augmented(const AugmentedState& a, const FieldModel& fm) {
  const ToroidalPoint p = a.slow.point();
  const FieldSample f = fm.evaluate(p);
  const FieldFrameVelocity w{f.b * a.fast.u_r, f.b * a.fast.u_perp, a.slow.vpar};
  return {toroidal_to_cartesian(p, fm.torus()), velocity_from_field_frame(w, f.omega, p.theta, p.phi)};
}

ToroidalState toroidal_from_augmented(const AugmentedState& a, const FieldModel& fm) {
  const FieldSample f = fm.evaluate(a.slow.point());
  const double so = std::sin(f.omega);
  const double co = std::cos(f.omega);
  const double v_perp = f.b * a.fast.u_perp;
  return {a.slow.r,
          a.slow.theta,
          a.slow.phi,
          f.b * a.fast.u_r,
          so * a.slow.vpar - co * v_perp,
          co * a.slow.vpar + so * v_perp};
}

AugmentedState augmented_from_toroidal(const ToroidalState& s, const FieldModel& fm) {
  const FieldSample f = fm.evaluate({s.r, s.theta, s.phi});
  const double so = std::sin(f.omega);
  const double co = std::cos(f.omega);
  const double vpar = co * s.v_phi + so * s.v_theta;
  const double v_perp = so * s.v_phi - co * s.v_theta;
  return {{s.r, s.phi, s.theta, vpar, (s.v_r * s.v_r + v_perp * v_perp) / 2.0}, {s.v_r / f.b, v_perp / f.b}};
}

ToroidalState toroidal_from_physical(const PhysicalState& s, const TorusParams& tp) {
  const ToroidalPoint p = cartesian_to_toroidal(s.position, tp);
  const CoordinateFrame f = coordinate_frame(p.theta, p.phi);
  return {p.r, p.theta, p.phi, dot(s.velocity, f.e_r), dot(s.velocity, f.e_theta), dot(s.velocity, f.e_phi)};
}

PhysicalState physical_from_toroidal(const ToroidalState& s, const TorusParams& tp) {
  const CoordinateFrame f = coordinate_frame(s.theta, s.phi);
  return {toroidal_to_cartesian({s.r, s.theta, s.phi}, tp),
          s.v_r * f.e_r + s.v_theta * f.e_theta + s.v_phi * f.e_phi};
}

double constraint_defect(const AugmentedState& a, const FieldModel& fm) {
  const double b = fm.evaluate(a.slow.point()).b;
  const double u2 = a.fast.u_r * a.fast.u_r + a.fast.u_perp * a.fast.u_perp;
  return std::abs(b * b * u2 / 2.0 - a.slow.bmu);
}

}  // namespace torus
