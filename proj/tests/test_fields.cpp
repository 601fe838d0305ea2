#include <doctest.h>

#include "oracle_values.hpp"
#include "test_support.hpp"
#include "torus_pusher/errors.hpp"
#include "torus_pusher/fields.hpp"

using namespace torus;
using testing_support::near;
using testing_support::Sampler;

namespace {

const TorusParams kTorus{};

/// Field with b = 0 everywhere.
class NullField final : public FieldModel {
 public:
  NullField() : FieldModel(TorusParams{}) {}
  std::string name() const override { return "null"; }

 protected:
  FieldSample sample(const ToroidalPoint&) const override { return {}; }
};

double max_entry(const Vec3& a) { return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)}); }

}  // namespace

TEST_CASE("screw field sample against the oracle") {
  const ScrewField fm({}, kTorus);
  const FieldSample s = fm.evaluate({1.5, std::numbers::pi / 6, 0.7});
  const double got[] = {s.b, s.omega, s.db_dr, s.db_dtheta, s.domega_dr, s.domega_dtheta};
  for (int i = 0; i < 6; ++i) {
    CHECK(near(got[i], oracle::kScrewField[i], 1e-13));
  }
  CHECK(s.e_r == 0.0);
  CHECK(s.e_perp == 0.0);
  CHECK(s.e_par == 0.0);
  CHECK(fm.potential({1.0, 0.2, 0.0}).value() == 0.0);
}

TEST_CASE("screw coefficients against the oracle") {
  const ScrewField fm({}, kTorus);
  const GeometryCoefficients c = coefficients(fm, {1.5, std::numbers::pi / 6, 0.0});
  const double got[] = {c.alpha, c.beta,   c.gamma_c,   c.delta, c.zeta, c.eta,
                        c.kappa, c.lambda, c.domega_dr, c.big_r, c.b};
  for (int i = 0; i < 11; ++i) {
    CAPTURE(i);
    CHECK(near(got[i], oracle::kScrewCoefficients[i], 1e-13));
  }
}

TEST_CASE("Solov'ev field, electric field and potential against the oracle") {
  const SolovevField fm({}, kTorus);
  const ToroidalPoint p{0.5, 0.0, 0.0};
  const FieldSample s = fm.evaluate(p);
  const double got[] = {s.b, s.omega, s.db_dr, s.db_dtheta, s.domega_dr, s.domega_dtheta, s.e_r};
  for (int i = 0; i < 7; ++i) {
    CHECK(near(got[i], oracle::kSolovevField[i], 1e-13));
  }
  CHECK(near(fm.potential(p).value(), oracle::kSolovevField[7], 1e-14));
  CHECK(fm.psi(1.0) == doctest::Approx(5.0 / 6.0));
  CHECK(fm.dpsi(1.0) == 0.0);
}

TEST_CASE("closed-form partials agree with finite differences") {
  Sampler rng;
  const ScrewField screw({}, kTorus);
  const SolovevField solovev({}, kTorus);
  const double h = 1e-6;
  for (const FieldModel* fm : {static_cast<const FieldModel*>(&screw), static_cast<const FieldModel*>(&solovev)}) {
    for (int i = 0; i < 100; ++i) {
      const ToroidalPoint p = rng.point(0.2, 1.5);
      const FieldSample s = fm->evaluate(p);
      const FieldSample rp = fm->evaluate({p.r + h, p.theta, p.phi});
      const FieldSample rm = fm->evaluate({p.r - h, p.theta, p.phi});
      const FieldSample tp = fm->evaluate({p.r, p.theta + h, p.phi});
      const FieldSample tm = fm->evaluate({p.r, p.theta - h, p.phi});
      CHECK(near(s.db_dr, (rp.b - rm.b) / (2 * h), 1e-7));
      CHECK(near(s.db_dtheta, (tp.b - tm.b) / (2 * h), 1e-7));
      CHECK(near(s.domega_dr, (rp.omega - rm.omega) / (2 * h), 1e-7));
      CHECK(near(s.domega_dtheta, (tp.omega - tm.omega) / (2 * h), 1e-7));
    }
  }
}

TEST_CASE("coefficient identities") {
  Sampler rng;
  const SolovevField fm({}, kTorus);
  for (int i = 0; i < 200; ++i) {
    const ToroidalPoint p = rng.point(0.05, 1.7);
    const FieldSample s = fm.evaluate(p);
    const GeometryCoefficients c = coefficients(s, p, kTorus);
    const double k = 1.0 / p.r - std::cos(p.theta) / c.big_r;
    CHECK(near(c.gamma_c + c.zeta, std::cos(2 * s.omega) * k, 1e-12));
    CHECK(near(c.delta, k * std::sin(2 * s.omega) / 2, 1e-12));
    CHECK(near(c.lambda, -s.db_dr / s.b, 1e-14));
  }
}

TEST_CASE("both models are divergence free") {
  Sampler rng;
  const ScrewField screw({}, kTorus);
  const SolovevField solovev({}, kTorus);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ToroidalPoint p = rng.point(0.01, 1.7);
    worst = std::max({worst, std::abs(divergence_check(screw, p)), std::abs(divergence_check(solovev, p))});
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("divergence residual detects a non-solenoidal field") {
  FieldSample s;
  const double theta = std::numbers::pi / 4;
  s.omega = std::numbers::pi / 2;
  s.b = 1.0 + std::cos(theta) / 10;
  s.db_dtheta = -std::sin(theta) / 10;
  CHECK(near(divergence_residual(s, {1.0, theta, 0.0}, kTorus), oracle::kNonSolenoidalResidual[0], 1e-14));
}

TEST_CASE("domain guard and degenerate fields") {
  const ScrewField fm({}, kTorus, DomainGuard{1e-6, 1e-3});
  CHECK_THROWS_AS(fm.evaluate({0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(fm.evaluate({1e-7, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(fm.evaluate({1.7495, 0.0, 0.0}), DomainError);
  CHECK_NOTHROW(fm.evaluate({1.7485, 0.0, 0.0}));
  CHECK_THROWS_AS(NullField().evaluate({1.0, 0.0, 0.0}), DegenerateField);
  CHECK_THROWS_AS(ScrewField({0.0, 10.0}, kTorus), ValidationError);
  CHECK_FALSE(NullField().potential({1.0, 0.0, 0.0}).has_value());
}

TEST_CASE("Cartesian field vectors") {
  Sampler rng;
  const SolovevField fm({}, kTorus);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const ToroidalPoint p = rng.point(0.2, 1.5);
    const Vec3 x = toroidal_to_cartesian(p, kTorus);
    const CartesianField f = cartesian_field(fm, x);
    const FieldSample s = fm.evaluate(p);
    CHECK(norm(f.magnetic) == doctest::Approx(s.b).epsilon(1e-14));
    CHECK(std::abs(dot(f.magnetic, coordinate_frame(p.theta, p.phi).e_r)) < 1e-12);

    // E = -grad(potential), differentiated in Cartesian coordinates
    const auto phi_at = [&](const Vec3& y) { return fm.potential(cartesian_to_toroidal(y, kTorus)).value(); };
    const Vec3 grad{(phi_at(x + Vec3{h, 0, 0}) - phi_at(x - Vec3{h, 0, 0})) / (2 * h),
                    (phi_at(x + Vec3{0, h, 0}) - phi_at(x - Vec3{0, h, 0})) / (2 * h),
                    (phi_at(x + Vec3{0, 0, h}) - phi_at(x - Vec3{0, 0, h})) / (2 * h)};
    CHECK(max_entry(f.electric + grad) < 1e-7);
  }
}
