#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "torus_pusher/dynamics.hpp"

namespace testing_support {

/// |a - b| <= tol * max(1, |b|).
inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

/// Random points and states away from the domain edges.
class Sampler {
 public:
  explicit Sampler(unsigned long long seed = 20240917ULL) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  torus::ToroidalPoint point(double r_lo = 0.1, double r_hi = 1.6) {
    return {uniform(r_lo, r_hi), uniform(-std::numbers::pi, std::numbers::pi),
            uniform(-std::numbers::pi, std::numbers::pi)};
  }

  torus::SlowState slow(double r_lo = 0.1, double r_hi = 1.6) {
    const torus::ToroidalPoint p = point(r_lo, r_hi);
    return {p.r, p.phi, p.theta, uniform(-5.0, 5.0), uniform(0.0, 50.0)};
  }

  torus::FastState fast() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  torus::Vec3 vec(double scale = 10.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
  }

 private:
  std::mt19937_64 rng_;
};

/// Time derivative of the Cartesian position and velocity implied by a
/// toroidal-coordinate derivative, by the chain rule on the moving basis.
inline torus::PhysicalState cartesian_rate(const torus::ToroidalState& s, const torus::ToroidalState& ds,
                                           const torus::TorusParams& tp) {
  using torus::Vec3;
  const double ct = std::cos(s.theta);
  const double st = std::sin(s.theta);
  const double cp = std::cos(s.phi);
  const double sp = std::sin(s.phi);
  const Vec3 e_r{ct * cp, ct * sp, st};
  const Vec3 e_t{-st * cp, -st * sp, ct};
  const Vec3 e_p{-sp, cp, 0.0};
  const Vec3 rho{cp, sp, 0.0};
  const double big_r = tp.major_radius + s.r * ct;

  const Vec3 dx = ds.r * e_r + (s.r * ds.theta) * e_t + (big_r * ds.phi) * e_p;
  const Vec3 de_r = ds.theta * e_t + (ct * ds.phi) * e_p;
  const Vec3 de_t = -ds.theta * e_r + (-st * ds.phi) * e_p;
  const Vec3 de_p = -ds.phi * rho;
  const Vec3 dv = ds.v_r * e_r + ds.v_theta * e_t + ds.v_phi * e_p + s.v_r * de_r + s.v_theta * de_t +
                  s.v_phi * de_p;
  return {dx, dv};
}

}  // namespace testing_support
