#include <doctest.h>

#include "test_support.hpp"
#include "torus_pusher/config.hpp"
#include "torus_pusher/diagnostics.hpp"
#include "torus_pusher/errors.hpp"

using namespace torus;

TEST_CASE("empty text gives the screw-field defaults") {
  const ExperimentConfig c = parse_config("");
  CHECK(c.field == "screw");
  CHECK(c.torus.major_radius == 1.75);
  CHECK(c.b0 == 50.0);
  CHECK(c.b1 == 10.0);
  CHECK(c.r0 == 1.5);
  CHECK(c.theta0 == std::numbers::pi / 6);
  CHECK(c.phi0 == std::numbers::pi / 8);
  CHECK(c.v0.x == 10.0);
  CHECK(c.v0.y == 10.0);
  CHECK(c.v0.z == 5.0);
  CHECK(c.initial_velocity_frame == VelocityFrame::cartesian);
  CHECK(c.tfinal == 0.5);
  CHECK(c.reference_dt == 1e-7);
  CHECK(c.asymptotic_scheme == Scheme::limit2_eff);
  CHECK(c.asymptotic_dt == 1e-5);
  CHECK(c.max_steps == 100000000);
}

TEST_CASE("lists, comments and expressions") {
  const ExperimentConfig c = parse_config(
      "# sweep\n"
      "eps = 1e-2, 1e-3   # two values\n"
      "dt = 4e-3,2e-3\n"
      "schemes = imex1, imex2, boris\n"
      "theta0 = pi/4\n"
      "phi0 = -2*pi/3\n"
      "\n"
      "V0 = 1, 2, 3\n"
      "initial_velocity_frame = rtp\n");
  CHECK(c.eps == std::vector<double>{1e-2, 1e-3});
  CHECK(c.dt == std::vector<double>{4e-3, 2e-3});
  CHECK(c.schemes == std::vector<Scheme>{Scheme::imex1, Scheme::imex2, Scheme::boris});
  CHECK(c.theta0 == std::numbers::pi / 4);
  CHECK(c.phi0 == doctest::Approx(-2 * std::numbers::pi / 3));
  CHECK(c.v0.z == 3.0);
  CHECK(c.initial_velocity_frame == VelocityFrame::rtp);
}

TEST_CASE("parse errors carry the line number") {
  const auto line_of = [](const char* text) {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("eps = 1e-2\n\nmagic = 3\n") == 3);
  CHECK(line_of("eps = abc") == 1);
  CHECK(line_of("# c\nschemes = imex2, euler") == 2);
  CHECK(line_of("dt 1e-3") == 1);
  CHECK(line_of("eps = 1\neps = 2") == 2);
  CHECK(line_of("V0 = 1, 2") == 1);
  CHECK(line_of("stride = 0") == 1);
  CHECK(line_of("field = mirror") == 1);
  CHECK(line_of("eps =") == 1);
}

TEST_CASE("validation of the time grids and budget") {
  CHECK_THROWS_AS(parse_config("dt = 3e-3\nreference_dt = 2e-3"), ValidationError);
  CHECK_NOTHROW(parse_config("dt = 3e-3\nreference_dt = 1e-7"));
  CHECK_THROWS_AS(parse_config("dt = 1.5e-5"), ValidationError);  // not a multiple of asymptotic_dt
  CHECK_NOTHROW(parse_config("dt = 1.5e-5\nreference = none"));
  CHECK_THROWS_AS(parse_config("max_steps = 1000"), ValidationError);
  CHECK_THROWS_AS(parse_config("eps = -1"), ValidationError);
  CHECK_THROWS_AS(parse_config("r0 = 2"), ValidationError);
  CHECK_THROWS_AS(parse_config("asymptotic_scheme = imex2"), ValidationError);
  CHECK_THROWS_AS(parse_config("tfinal = 100\nreference_dt = 1e-8\ndt = 1e-2"), ValidationError);
}

TEST_CASE("tokamak defaults and field construction") {
  const ExperimentConfig c = parse_config("field = solovev\nreference = none");
  CHECK(c.tfinal == 20.0);
  CHECK(parse_config("field = solovev\ntfinal = 1\nreference = none").tfinal == 1.0);
  const auto fm = make_field_model(c);
  CHECK(fm->name() == "solovev");
  CHECK(fm->potential({0.5, 0.0, 0.0}).has_value());
  CHECK(make_field_model(ExperimentConfig{})->name() == "screw");
}

TEST_CASE("initial state in both velocity frames") {
  ExperimentConfig c;
  const auto fm = make_field_model(c);
  const AugmentedState a = initial_state(c, *fm);
  CHECK(kinetic_energy(a.slow) == doctest::Approx(112.5).epsilon(1e-14));
  CHECK(a.slow.theta == c.theta0);

  c.initial_velocity_frame = VelocityFrame::rtp;
  const AugmentedState b = initial_state(c, *fm);
  CHECK(kinetic_energy(b.slow) == doctest::Approx(112.5).epsilon(1e-14));
  CHECK(b.fast.u_r * fm->evaluate(b.slow.point()).b == doctest::Approx(10.0));
}
