#include "torus_pusher/ensemble.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>

#include "torus_pusher/errors.hpp"

namespace torus {

namespace {

AugmentedState step_once(Scheme scheme, const AugmentedState& a, double t, double dt, double eps,
                         const FieldModel& fm) {
  switch (scheme) {
    case Scheme::imex1:
      return imex1_step(a, t, dt, eps, fm);
    case Scheme::imex2:
      return imex2_step(a, t, dt, eps, fm);
    case Scheme::limit1:
      return {limit1_step(a.slow, t, dt, fm), {}};
    case Scheme::limit2:
      return {limit2_step(a.slow, t, dt, fm), {}};
    case Scheme::limit1_eff: {
      const SlowState y = limit1_eff_step(a.slow, t, dt, eps, fm);
      return {y, effective_uperp(y, eps, local_field(fm, y))};
    }
    case Scheme::limit2_eff: {
      const SlowState y = limit2_eff_step(a.slow, t, dt, eps, fm);
      return {y, effective_uperp(y, eps, local_field(fm, y))};
    }
    case Scheme::rk4:
    case Scheme::boris:
      break;
  }
  throw ValidationError("scheme '" + std::string(to_string(scheme)) + "' is not an augmented-state scheme");
}

template <class State, class Step>
ParticleStatus advance(State& s, std::int64_t steps, Step&& step) {
  ParticleStatus st;
  try {
    for (; st.steps_done < steps; ++st.steps_done) {
      s = step(s, st.steps_done);
    }
  } catch (const std::exception& e) {
    st.ok = false;
    st.message = e.what();
  }
  return st;
}

void check_augmented_scheme(Scheme scheme) {
  if (scheme == Scheme::rk4 || scheme == Scheme::boris) {
    throw ValidationError("scheme '" + std::string(to_string(scheme)) + "' is not an augmented-state scheme");
  }
}

}  // namespace

std::vector<ParticleStatus> push_ensemble(std::span<AugmentedState> particles, Scheme scheme, double t0, double dt,
                                          std::int64_t steps, double eps, const FieldModel& fm) {
  check_augmented_scheme(scheme);
  std::vector<ParticleStatus> status(particles.size());
  const auto n = static_cast<std::int64_t>(particles.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    status[i] = advance(particles[i], steps, [&](const AugmentedState& a, std::int64_t k) {
      return step_once(scheme, a, t0 + static_cast<double>(k) * dt, dt, eps, fm);
    });
  }
  return status;
}

std::vector<ParticleStatus> push_ensemble_serial(std::span<AugmentedState> particles, Scheme scheme, double t0,
                                                 double dt, std::int64_t steps, double eps, const FieldModel& fm) {
  check_augmented_scheme(scheme);
  std::vector<ParticleStatus> status(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    status[i] = advance(particles[i], steps, [&](const AugmentedState& a, std::int64_t k) {
      return step_once(scheme, a, t0 + static_cast<double>(k) * dt, dt, eps, fm);
    });
  }
  return status;
}

std::vector<ParticleStatus> push_ensemble(std::span<PhysicalState> particles, double dt, std::int64_t steps,
                                          double eps, const FieldModel& fm, BorisVariant variant) {
  std::vector<ParticleStatus> status(particles.size());
  const auto n = static_cast<std::int64_t>(particles.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    status[i] = advance(particles[i], steps, [&](const PhysicalState& s, std::int64_t) {
      return boris_step(s, dt, eps, fm, variant);
    });
  }
  return status;
}

std::vector<ParticleStatus> push_ensemble_serial(std::span<PhysicalState> particles, double dt, std::int64_t steps,
                                                 double eps, const FieldModel& fm, BorisVariant variant) {
  std::vector<ParticleStatus> status(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    status[i] = advance(particles[i], steps, [&](const PhysicalState& s, std::int64_t) {
      return boris_step(s, dt, eps, fm, variant);
    });
  }
  return status;
}

int configure_threads() {
  if (const char* env = std::getenv("TORUS_PUSHER_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) {
      omp_set_num_threads(static_cast<int>(n));
    }
  }
  return omp_get_max_threads();
}

}  // namespace torus
