#pragma once

#include <memory>
#include <optional>
#include <string>

#include "torus_pusher/geometry.hpp"

namespace torus {

/// Radial window where field evaluation is allowed: r in [r_min, R0 - r_margin].
struct DomainGuard {
  double r_min = 1e-6;
  double r_margin = 1e-3;
};

/// Everything a field model supplies at one point. The magnetic field is
/// B = b e_par with the pitch angle omega; the electric field is given on
/// the field-aligned frame (e_r, e_perp, e_par).
struct FieldSample {
  double b = 0.0;
  double omega = 0.0;
  double db_dr = 0.0;
  double db_dtheta = 0.0;
  double domega_dr = 0.0;
  double domega_dtheta = 0.0;
  double e_r = 0.0;
  double e_perp = 0.0;
  double e_par = 0.0;
};

/// Steady, axisymmetric field with no radial magnetic component.
/// Instances are immutable after construction.
class FieldModel {
 public:
  explicit FieldModel(TorusParams torus, DomainGuard guard = {});
  virtual ~FieldModel() = default;

  FieldModel(const FieldModel&) = default;
  FieldModel& operator=(const FieldModel&) = default;
  FieldModel(FieldModel&&) = default;
  FieldModel& operator=(FieldModel&&) = default;

  virtual std::string name() const = 0;

  /// Throws DomainError outside the guard window, DegenerateField if b <= 0.
  FieldSample evaluate(const ToroidalPoint& p) const;

  /// Electrostatic potential with E = -grad(potential), if the model has one.
  virtual std::optional<double> potential(const ToroidalPoint& p) const;

  const TorusParams& torus() const noexcept { return torus_; }
  const DomainGuard& guard() const noexcept { return guard_; }

  /// Throws DomainError if r is outside the guard window.
  void check_domain(double r) const;

 protected:
  virtual FieldSample sample(const ToroidalPoint& p) const = 0;

 private:
  TorusParams torus_;
  DomainGuard guard_;
};

struct ScrewFieldParams {
  double b0 = 50.0;
  double b1 = 10.0;
};

/// B_theta = B1 r / R, B_phi = B0 / R, no electric field.
class ScrewField final : public FieldModel {
 public:
  ScrewField(ScrewFieldParams params, TorusParams torus, DomainGuard guard = {});

  std::string name() const override { return "screw"; }
  std::optional<double> potential(const ToroidalPoint& p) const override;
  const ScrewFieldParams& params() const noexcept { return params_; }

 protected:
  FieldSample sample(const ToroidalPoint& p) const override;

 private:
  ScrewFieldParams params_;
};

struct SolovevFieldParams {
  double b0 = 50.0;
  double psi_scale = 5.0;
  double potential_scale = -2.0;
};

/// Solov'ev equilibrium psi(r) = s (r^2/2 - r^3/3), B = B0 grad(phi) + grad(psi) x grad(phi),
/// with the electrostatic potential c * psi.
class SolovevField final : public FieldModel {
 public:
  SolovevField(SolovevFieldParams params, TorusParams torus, DomainGuard guard = {});

  std::string name() const override { return "solovev"; }
  std::optional<double> potential(const ToroidalPoint& p) const override;
  const SolovevFieldParams& params() const noexcept { return params_; }

  double psi(double r) const;
  double dpsi(double r) const;

 protected:
  FieldSample sample(const ToroidalPoint& p) const override;

 private:
  SolovevFieldParams params_;
};

/// Pointwise coefficient bundle of the field-aligned equations of motion.
/// `gamma_c` is the curvature coefficient (not the SDIRK constant).
struct GeometryCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_c = 0.0;
  double delta = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  double lambda = 0.0;
  double domega_dr = 0.0;
  double big_r = 0.0;
  double b = 0.0;
};

GeometryCoefficients coefficients(const FieldSample& s, const ToroidalPoint& p, const TorusParams& tp);
GeometryCoefficients coefficients(const FieldModel& fm, const ToroidalPoint& p);

/// Gauss-law residual (sin w / r) d_theta b + b (cos w d_theta w / r - sin w sin(theta) / R).
double divergence_residual(const FieldSample& s, const ToroidalPoint& p, const TorusParams& tp);
double divergence_check(const FieldModel& fm, const ToroidalPoint& p);

/// Cartesian magnetic and electric field vectors.
struct CartesianField {
  Vec3 magnetic;
  Vec3 electric;
};

CartesianField cartesian_field(const FieldSample& s, const ToroidalPoint& p);
/// Throws DomainError if x does not map into the field domain.
CartesianField cartesian_field(const FieldModel& fm, const CartesianPoint& x);

}  // namespace torus
