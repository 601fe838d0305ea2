#include "torus_pusher/geometry.hpp"

#include <cmath>
#include <numbers>

#include "torus_pusher/errors.hpp"

namespace torus {

void TorusParams::validate() const {
  if (!(major_radius > 0.0) || !std::isfinite(major_radius)) {
    throw ValidationError("torus major radius must be positive");
  }
}

CartesianPoint toroidal_to_cartesian(const ToroidalPoint& p, const TorusParams& tp) {
  const double big_r = major_radius_at(p.r, p.theta, tp);
  return {big_r * std::cos(p.phi), big_r * std::sin(p.phi), p.r * std::sin(p.theta)};
}

ToroidalPoint cartesian_to_toroidal(const CartesianPoint& x, const TorusParams& tp) {
  const double rho = std::hypot(x.x, x.y);
  if (rho == 0.0) {
    throw DomainError("toroidal angle undefined on the symmetry axis");
  }
  const double radial = rho - tp.major_radius;
  const double r = std::hypot(radial, x.z);
  if (!(r > 0.0) || !(r < tp.major_radius)) {
    throw DomainError("minor radius " + std::to_string(r) + " outside (0, R0)");
  }
  return {r, std::atan2(x.z, radial), std::atan2(x.y, x.x)};
}

CoordinateFrame coordinate_frame(double theta, double phi) {
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  return {{ct * cp, ct * sp, st}, {-st * cp, -st * sp, ct}, {-sp, cp, 0.0}};
}

FieldFrame field_aligned_frame(double omega, double theta, double phi) {
  const CoordinateFrame f = coordinate_frame(theta, phi);
  const double co = std::cos(omega);
  const double so = std::sin(omega);
  return {f.e_r, so * f.e_phi - co * f.e_theta, co * f.e_phi + so * f.e_theta};
}

FieldFrameVelocity velocity_to_field_frame(const Vec3& v, double omega, double theta, double phi) {
  const FieldFrame f = field_aligned_frame(omega, theta, phi);
  return {dot(v, f.e_r), dot(v, f.e_perp), dot(v, f.e_par)};
}

Vec3 velocity_from_field_frame(const FieldFrameVelocity& w, double omega, double theta, double phi) {
  const FieldFrame f = field_aligned_frame(omega, theta, phi);
  return w.v_r * f.e_r + w.v_perp * f.e_perp + w.v_par * f.e_par;
}

double unwrap_angle(double angle, double previous) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return angle + two_pi * std::round((previous - angle) / two_pi);
}

}  // namespace torus
