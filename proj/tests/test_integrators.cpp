#include <doctest.h>

#include "oracle_values.hpp"
#include "test_support.hpp"
#include "torus_pusher/diagnostics.hpp"
#include "torus_pusher/errors.hpp"
#include "torus_pusher/integrators.hpp"

using namespace torus;
using testing_support::near;
using testing_support::Sampler;

namespace {

const TorusParams kTorus{};
const ScrewField kScrew({}, kTorus);
const SolovevField kSolovev({}, kTorus);
const SlowState kSolovevZ{0.5, 0.1, 0.3, 2.0, 5.0};
const FastState kSolovevU{0.05, 0.1};

AugmentedState initial_data() {
  const Vec3 x = toroidal_to_cartesian({1.5, std::numbers::pi / 6, std::numbers::pi / 8}, kTorus);
  return augmented_from_physical({x, {10.0, 10.0, 5.0}}, kScrew);
}

void check_augmented(const AugmentedState& a, const double* expected, double tol) {
  const double got[] = {a.slow.r, a.slow.phi, a.slow.theta, a.slow.vpar, a.slow.bmu, a.fast.u_r, a.fast.u_perp};
  for (int i = 0; i < 7; ++i) {
    CAPTURE(i);
    CHECK(near(got[i], expected[i], tol));
  }
}

void check_slow(const SlowState& z, const double* expected, double tol) {
  const double got[] = {z.r, z.phi, z.theta, z.vpar, z.bmu};
  for (int i = 0; i < 5; ++i) {
    CAPTURE(i);
    CHECK(near(got[i], expected[i], tol));
  }
}

CartesianField uniform_field(const Vec3& b, const Vec3& e) { return {b, e}; }

}  // namespace

TEST_CASE("SDIRK constants") {
  const double g = SdirkConstants::sdirk_gamma;
  CHECK(g * g - 2 * g + 0.5 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(SdirkConstants::stage_offset == doctest::Approx(1.0 / (2 * g)));
  CHECK(SdirkConstants::blend_weight == doctest::Approx(1.0 / (2 * g * g)));
}

TEST_CASE("stiff solve inverts Id - a J0 and damps by (1 + a^2)^(-1/2)") {
  Sampler rng;
  for (int i = 0; i < 200; ++i) {
    const double a = std::pow(10.0, rng.uniform(-3.0, 8.0));
    const FastState rhs = rng.fast();
    const FastState u = solve_stiff(a, rhs);
    const FastState back = u - rotate_j0(u) * a;
    CHECK(norm(back - rhs) <= 1e-14 * std::max(1.0, a) * norm(rhs));
    CHECK(norm(u) / norm(rhs) == doctest::Approx(1.0 / std::sqrt(1.0 + a * a)).epsilon(1e-14));
  }
}

TEST_CASE("single steps against the oracle") {
  check_augmented(imex1_step(initial_data(), 0.0, 1e-3, 1e-2, kScrew), oracle::kImex1Step, 1e-12);
  check_augmented(imex2_step(initial_data(), 0.0, 2e-3, 1e-2, kScrew), oracle::kImex2Step, 1e-12);
  check_augmented(imex2_step({kSolovevZ, kSolovevU}, 0.0, 1e-2, 1e-3, kSolovev), oracle::kImex2SolovevStep, 1e-12);
  check_slow(limit1_step(kSolovevZ, 0.0, 1e-2, kSolovev), oracle::kLimit1Step, 1e-13);
  check_slow(limit1_eff_step(kSolovevZ, 0.0, 1e-2, 1e-2, kSolovev), oracle::kLimit1EffStep, 1e-13);
  check_slow(limit2_step(kSolovevZ, 0.0, 1e-2, kSolovev), oracle::kLimit2Step, 1e-13);
  check_slow(limit2_eff_step(kSolovevZ, 0.0, 1e-2, 1e-2, kSolovev), oracle::kLimit2EffStep, 1e-13);
}

TEST_CASE("imex steps reduce to the limit schemes as eps vanishes") {
  const AugmentedState a{kSolovevZ, kSolovevU};
  const SlowState z1 = imex1_step(a, 0.0, 1e-2, 1e-12, kSolovev).slow;
  const SlowState z2 = imex2_step(a, 0.0, 1e-2, 1e-12, kSolovev).slow;
  CHECK(norm(z1 - limit1_step(kSolovevZ, 0.0, 1e-2, kSolovev)) < 1e-9);
  // the first stage of the second-order step damps the initial fast velocity
  // only to O(eps), so the slow update matches the limit rule to O(eps) too
  CHECK(norm(z2 - limit2_step(kSolovevZ, 0.0, 1e-2, kSolovev)) < 1e-9);
}

TEST_CASE("scheme names") {
  for (Scheme s : {Scheme::rk4, Scheme::boris, Scheme::imex1, Scheme::imex2, Scheme::limit1, Scheme::limit2,
                   Scheme::limit1_eff, Scheme::limit2_eff}) {
    CHECK(parse_scheme(to_string(s)) == s);
  }
  CHECK(to_string(Scheme::limit2_eff) == "limit2_eff");
  CHECK_THROWS_AS(parse_scheme("euler"), ValidationError);
  CHECK(is_limit_scheme(Scheme::limit1_eff));
  CHECK_FALSE(is_limit_scheme(Scheme::imex2));
}

TEST_CASE("step counts") {
  CHECK(step_count(0.0, 0.5, 2e-3) == 250);
  CHECK(step_count(0.0, 0.5, 3e-3) == 166);
  CHECK(step_count(0.0, 0.5, 1e-7) == 5000000);
  CHECK(step_count(0.0, 0.0, 1e-2) == 0);
  CHECK_THROWS_AS(step_count(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(step_count(1.0, 0.0, 0.1), ValidationError);
}

TEST_CASE("rk4 is fourth order on y' = y") {
  const auto rhs = [](double, const SlowState& y) { return y; };
  std::vector<std::pair<double, double>> errs;
  for (double dt : {0.1, 0.05, 0.025}) {
    SlowState y{1.0, 0.0, 0.0, 0.0, 0.0};
    const int n = static_cast<int>(std::lround(1.0 / dt));
    for (int k = 0; k < n; ++k) {
      y = rk4_step(rhs, k * dt, y, dt);
    }
    errs.emplace_back(dt, std::abs(y.r - std::exp(1.0)));
  }
  CHECK(observed_order(errs) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("Boris rotation in a uniform magnetic field") {
  const Vec3 b{0.0, 0.0, 2.0};
  const double eps = 0.1;
  const double dt = 0.03;
  const auto field = [&](const Vec3&) { return uniform_field(b, {}); };
  PhysicalState s{{1.0, 0.0, 0.0}, {0.0, 3.0, 0.5}};
  const double angle = 2.0 * std::atan(norm(b) * dt / (2.0 * eps));

  // the discrete orbit turns about a fixed centre by a fixed angle each step
  std::vector<Vec3> xs{s.position};
  for (int n = 0; n < 300; ++n) {
    s = boris_step(s, dt, eps, field);
    xs.push_back(s.position);
    CHECK(norm(s.velocity) == doctest::Approx(std::hypot(3.0, 0.5)).epsilon(1e-14));
    CHECK(s.velocity.z == 0.5);
  }
  const auto planar = [](const Vec3& v) { return Vec3{v.x, v.y, 0.0}; };
  for (std::size_t n = 2; n < xs.size(); ++n) {
    const Vec3 a = planar(xs[n - 1] - xs[n - 2]);
    const Vec3 c = planar(xs[n] - xs[n - 1]);
    const double turn = std::atan2(-cross(a, c).z, dot(a, c));  // clockwise for positive charge
    CHECK(turn == doctest::Approx(angle).epsilon(1e-12));
  }
}

TEST_CASE("Boris: electric kicks and variants") {
  const Vec3 e{0.3, -0.2, 1.0};
  const auto field = [&](const Vec3&) { return uniform_field({}, e); };
  for (BorisVariant v : {BorisVariant::unstaggered, BorisVariant::staggered}) {
    const PhysicalState s = boris_step({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, 0.1, 1.0, field, v);
    CHECK(s.velocity.x == doctest::Approx(0.03));
    CHECK(s.velocity.z == doctest::Approx(0.1));
  }
  PhysicalState s{toroidal_to_cartesian({1.5, 0.5, 0.4}, kTorus), {10.0, 10.0, 5.0}};
  const double k0 = kinetic_energy_cartesian(s);
  for (int n = 0; n < 500; ++n) {
    s = boris_step(s, 1e-4, 1e-2, kScrew, BorisVariant::staggered);
  }
  CHECK(relative_drift(kinetic_energy_cartesian(s), k0) < 1e-13);
}

TEST_CASE("integrate samples on the requested grid") {
  const Trajectory t = integrate(Scheme::imex2, initial_data(), 0.0, 0.1, 2e-3, 1e-2, kScrew, {7});
  REQUIRE(t.ok());
  CHECK(t.size() == 9);  // 0, 7, ..., 49 and the final step 50
  CHECK(t.times.front() == 0.0);
  CHECK(t.times[1] == doctest::Approx(14e-3));
  CHECK(t.times.back() == doctest::Approx(0.1));
  CHECK(t.field == "screw");
  CHECK(t.scheme == Scheme::imex2);
}

TEST_CASE("all schemes run and keep angles continuous across the branch cut") {
  // start just below phi = pi so every run crosses it
  const AugmentedState a0{{1.5, 3.0, std::numbers::pi / 6, 4.5, 100.0}, {0.8, 0.2}};
  for (Scheme s : {Scheme::rk4, Scheme::boris, Scheme::imex1, Scheme::imex2, Scheme::limit1, Scheme::limit2,
                   Scheme::limit1_eff, Scheme::limit2_eff}) {
    CAPTURE(to_string(s));
    const double dt = s == Scheme::rk4 || s == Scheme::boris ? 1e-5 : 1e-3;
    const Trajectory t = integrate(s, a0, 0.0, 0.2, dt, 1e-2, kScrew, {100});
    REQUIRE(t.ok());
    for (std::size_t i = 1; i < t.size(); ++i) {
      CHECK(std::abs(t.states[i].slow.phi - t.states[i - 1].slow.phi) < 0.5);
      CHECK(std::abs(t.states[i].slow.theta - t.states[i - 1].slow.theta) < 0.5);
    }
    CHECK(t.states.back().slow.phi > std::numbers::pi);
  }
}

TEST_CASE("limit1 ignores eps, limit schemes carry the slaved fast velocity") {
  const Trajectory a = integrate(Scheme::limit1, initial_data(), 0.0, 0.1, 1e-3, 1e-2, kScrew);
  const Trajectory b = integrate(Scheme::limit1, initial_data(), 0.0, 0.1, 1e-3, 1e-4, kScrew);
  CHECK(linf_slow_error(a, b) == 0.0);
  CHECK(norm(a.states.back().fast) == 0.0);

  const Trajectory c = integrate(Scheme::limit2_eff, initial_data(), 0.0, 0.1, 1e-3, 1e-2, kScrew);
  const AugmentedState& last = c.states.back();
  CHECK(norm(last.fast - effective_uperp(last.slow, 1e-2, local_field(kScrew, last.slow))) == 0.0);
}

TEST_CASE("runs leaving the domain stop with the failing time") {
  // a strong outward radial velocity with a weak field drives r past R0
  AugmentedState a = initial_data();
  a.fast = {200.0, 0.0};
  const Trajectory t = integrate(Scheme::imex1, a, 0.0, 1.0, 1e-3, 10.0, kScrew);
  REQUIRE_FALSE(t.ok());
  CHECK(t.failure->time > 0.0);
  CHECK(t.failure->time < 1.0);
  CHECK(t.size() >= 1);
  CHECK(t.times.back() <= t.failure->time + 1e-12);

  const Trajectory bad = integrate(Scheme::boris, a, 0.0, 1.0, 1e-3, 10.0, kScrew);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("observed orders where the gyration is resolved") {
  const auto errors = [](Scheme s, double eps, std::initializer_list<double> dts) {
    const ToroidalPoint p{0.8, 0.5, 0.4};
    const Vec3 v = velocity_from_field_frame({2.0, 1.0, 4.0}, kScrew.evaluate(p).omega, p.theta, p.phi);
    const AugmentedState a0 = augmented_from_physical({toroidal_to_cartesian(p, kTorus), v}, kScrew);
    const Trajectory ref = integrate(Scheme::rk4, a0, 0.0, 0.1, 1e-6, eps, kScrew, {50});
    REQUIRE(ref.ok());
    std::vector<std::pair<double, double>> e;
    for (double dt : dts) {
      e.emplace_back(dt, linf_position_error(integrate(s, a0, 0.0, 0.1, dt, eps, kScrew), ref, kTorus));
    }
    return e;
  };
  // the backward-Euler damping of the gyration, exp(-T b^2 dt / (2 eps^2)), stays near 1 only for eps ~ 1
  CHECK(observed_order(errors(Scheme::imex1, 0.5, {2e-3, 1e-3, 5e-4})) == doctest::Approx(1.0).epsilon(0.15));
  CHECK(observed_order(errors(Scheme::imex2, 0.1, {2e-3, 1e-3, 5e-4})) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(observed_order(errors(Scheme::rk4, 0.1, {1e-4, 5e-5})) == doctest::Approx(4.0).epsilon(0.1));
}
