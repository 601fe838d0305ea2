#pragma once

#include "torus_pusher/vec3.hpp"

namespace torus {

struct TorusParams {
  double major_radius = 1.75;

  /// Throws ValidationError unless major_radius > 0.
  void validate() const;
};

/// (r, theta, phi). Angles may be unwrapped; only r is constrained, 0 < r < R0.
struct ToroidalPoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

using CartesianPoint = Vec3;

/// Local major radius R0 + r cos(theta).
inline double major_radius_at(double r, double theta, const TorusParams& tp) {
  return tp.major_radius + r * std::cos(theta);
}

CartesianPoint toroidal_to_cartesian(const ToroidalPoint& p, const TorusParams& tp);

/// Inverse map with theta, phi in (-pi, pi]. Throws DomainError on the z axis
/// (x = y = 0), on the magnetic axis r = 0, and for r >= R0.
ToroidalPoint cartesian_to_toroidal(const CartesianPoint& x, const TorusParams& tp);

/// Coordinate basis. Note that (e_r, e_phi, e_theta) is the direct ordering.
struct CoordinateFrame {
  Vec3 e_r;
  Vec3 e_theta;
  Vec3 e_phi;
};

/// Field-aligned basis; (e_r, e_perp, e_par) is direct.
struct FieldFrame {
  Vec3 e_r;
  Vec3 e_perp;
  Vec3 e_par;
};

CoordinateFrame coordinate_frame(double theta, double phi);

/// e_par = cos(omega) e_phi + sin(omega) e_theta, e_perp = sin(omega) e_phi - cos(omega) e_theta.
FieldFrame field_aligned_frame(double omega, double theta, double phi);

/// Velocity components on the field-aligned frame.
struct FieldFrameVelocity {
  double v_r = 0.0;
  double v_perp = 0.0;
  double v_par = 0.0;
};

FieldFrameVelocity velocity_to_field_frame(const Vec3& v, double omega, double theta, double phi);
Vec3 velocity_from_field_frame(const FieldFrameVelocity& w, double omega, double theta, double phi);

/// Maps `angle` onto the branch closest to `previous`.
double unwrap_angle(double angle, double previous);

}  // namespace torus
