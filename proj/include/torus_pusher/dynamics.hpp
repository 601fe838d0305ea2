#pragma once

#include "torus_pusher/fields.hpp"
#include "torus_pusher/geometry.hpp"
#include "torus_pusher/vec3.hpp"

namespace torus {

/// Slow unknowns Z = (r, phi, theta, v_par, b mu). `bmu` is the transverse
/// kinetic energy carried as an independent variable.
struct SlowState {
  double r = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double vpar = 0.0;
  double bmu = 0.0;

  ToroidalPoint point() const { return {r, theta, phi}; }

  SlowState& operator+=(const SlowState& o) {
    r += o.r;
    phi += o.phi;
    theta += o.theta;
    vpar += o.vpar;
    bmu += o.bmu;
    return *this;
  }
  SlowState& operator*=(double s) {
    r *= s;
    phi *= s;
    theta *= s;
    vpar *= s;
    bmu *= s;
    return *this;
  }
};

inline SlowState operator+(SlowState a, const SlowState& b) { return a += b; }
inline SlowState operator*(SlowState a, double s) { return a *= s; }
inline SlowState operator*(double s, SlowState a) { return a *= s; }
inline SlowState operator-(SlowState a, const SlowState& b) { return a += b * -1.0; }
double norm(const SlowState& z);

/// Scaled transverse velocity u = v_perp / b, components along (e_r, e_perp).
struct FastState {
  double u_r = 0.0;
  double u_perp = 0.0;

  FastState& operator+=(const FastState& o) {
    u_r += o.u_r;
    u_perp += o.u_perp;
    return *this;
  }
  FastState& operator*=(double s) {
    u_r *= s;
    u_perp *= s;
    return *this;
  }
};

inline FastState operator+(FastState a, const FastState& b) { return a += b; }
inline FastState operator*(FastState a, double s) { return a *= s; }
inline FastState operator*(double s, FastState a) { return a *= s; }
inline FastState operator-(FastState a, const FastState& b) { return a += b * -1.0; }
inline double norm(const FastState& u) { return std::hypot(u.u_r, u.u_perp); }

/// J0 = [[0, 1], [-1, 0]].
inline FastState rotate_j0(const FastState& u) { return {u.u_perp, -u.u_r}; }

/// The augmented unknowns (Z, u). The constraint b^2 |u|^2 / 2 = b mu holds
/// initially but is not enforced afterwards.
struct AugmentedState {
  SlowState slow;
  FastState fast;

  AugmentedState& operator+=(const AugmentedState& o) {
    slow += o.slow;
    fast += o.fast;
    return *this;
  }
  AugmentedState& operator*=(double s) {
    slow *= s;
    fast *= s;
    return *this;
  }
};

inline AugmentedState operator+(AugmentedState a, const AugmentedState& b) { return a += b; }
inline AugmentedState operator*(AugmentedState a, double s) { return a *= s; }
inline AugmentedState operator*(double s, AugmentedState a) { return a *= s; }

struct PhysicalState {
  CartesianPoint position;
  Vec3 velocity;

  PhysicalState& operator+=(const PhysicalState& o) {
    position += o.position;
    velocity += o.velocity;
    return *this;
  }
  PhysicalState& operator*=(double s) {
    position *= s;
    velocity *= s;
    return *this;
  }
};

inline PhysicalState operator+(PhysicalState a, const PhysicalState& b) { return a += b; }
inline PhysicalState operator*(PhysicalState a, double s) { return a *= s; }
inline PhysicalState operator*(double s, PhysicalState a) { return a *= s; }

/// Position and velocity in toroidal coordinates, velocity on (e_r, e_theta, e_phi).
struct ToroidalState {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double v_r = 0.0;
  double v_theta = 0.0;
  double v_phi = 0.0;

  ToroidalState& operator+=(const ToroidalState& o) {
    r += o.r;
    theta += o.theta;
    phi += o.phi;
    v_r += o.v_r;
    v_theta += o.v_theta;
    v_phi += o.v_phi;
    return *this;
  }
  ToroidalState& operator*=(double s) {
    r *= s;
    theta *= s;
    phi *= s;
    v_r *= s;
    v_theta *= s;
    v_phi *= s;
    return *this;
  }
};

inline ToroidalState operator+(ToroidalState a, const ToroidalState& b) { return a += b; }
inline ToroidalState operator*(ToroidalState a, double s) { return a *= s; }
inline ToroidalState operator*(double s, ToroidalState a) { return a *= s; }

/// Field sample and coefficient bundle at one slow state, computed once and
/// shared by all right-hand-side pieces of a stage.
struct LocalField {
  FieldSample field;
  GeometryCoefficients coeff;
};

LocalField local_field(const FieldModel& fm, const SlowState& z);

// -- full Lorentz dynamics ---------------------------------------------------

/// dx/dt = v, dv/dt = v x B / eps + E.
PhysicalState rhs_cartesian(const PhysicalState& s, double eps, const CartesianField& f);
PhysicalState rhs_cartesian(double t, const PhysicalState& s, double eps, const FieldModel& fm);

/// The same flow written in toroidal coordinates (B_r = 0).
ToroidalState rhs_full_toroidal(double t, const ToroidalState& s, double eps, const FieldModel& fm);

// -- augmented slow/fast formulation -----------------------------------------

/// Parallel force F_par(Z, u).
double force_parallel(const SlowState& z, const FastState& u, const GeometryCoefficients& c);

/// Slow right-hand side F(t, Z, u).
SlowState slow_rhs(const SlowState& z, const FastState& u, const LocalField& lf);
SlowState slow_rhs(double t, const SlowState& z, const FastState& u, const FieldModel& fm);

/// Non-stiff source U(t, Z, u) of the fast equation d(J0 u)/dt = U - b u / eps.
FastState uperp_drift(const SlowState& z, const FastState& u, const LocalField& lf);
FastState uperp_drift(double t, const SlowState& z, const FastState& u, const FieldModel& fm);

/// Drift numerators (E_perp - alpha v_par^2 + kappa b mu, -E_r + gamma v_par^2 - lambda b mu).
/// Satisfies b * U(t, Z, 0) = limit_drift(t, Z).
FastState limit_drift(const SlowState& z, const LocalField& lf);
FastState limit_drift(double t, const SlowState& z, const FieldModel& fm);

/// Fast velocity slaved to the slow variables at small eps: (eps / b) U(t, Z, 0).
FastState effective_uperp(const SlowState& z, double eps, const LocalField& lf);

/// Full right-hand side of the augmented system.
AugmentedState augmented_rhs(double t, const AugmentedState& a, double eps, const FieldModel& fm);

// -- asymptotic models ---------------------------------------------------------

/// First-order guiding-center system, identical to F(t, Z, 0).
SlowState rhs_order1(double t, const SlowState& z, const FieldModel& fm);

/// Effective second-order system F(t, Z, effective_uperp(Z)).
SlowState rhs_order2(double t, const SlowState& z, double eps, const FieldModel& fm);

/// The same system expanded component by component in terms of the drift
/// velocity w = U(t, Z, 0); an independent code path for cross-checking.
SlowState rhs_order2_expanded(double t, const SlowState& z, double eps, const FieldModel& fm);

// -- conversions -----------------------------------------------------------------

/// Builds (Z, u) on the constrained manifold. Angles come back in (-pi, pi].
AugmentedState augmented_from_physical(const PhysicalState& s, const FieldModel& fm);

/// Rebuilds position and velocity; the transverse velocity is b u (b mu is not used).
PhysicalState physical_from_augmented(const AugmentedState& a, const FieldModel& fm);

ToroidalState toroidal_from_augmented(const AugmentedState& a, const FieldModel& fm);
AugmentedState augmented_from_toroidal(const ToroidalState& s, const FieldModel& fm);
ToroidalState toroidal_from_physical(const PhysicalState& s, const TorusParams& tp);
PhysicalState physical_from_toroidal(const ToroidalState& s, const TorusParams& tp);

/// |b^2 |u|^2 / 2 - b mu|.
double constraint_defect(const AugmentedState& a, const FieldModel& fm);

}  // namespace torus
