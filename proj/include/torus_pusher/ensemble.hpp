#pragma once

#include <span>
#include <string>
#include <vector>

#include "torus_pusher/integrators.hpp"

namespace torus {

/// Outcome of one particle in an ensemble push.
struct ParticleStatus {
  bool ok = true;
  std::int64_t steps_done = 0;
  std::string message;
};

/// Advances every augmented state in place by `steps` steps of `scheme`
/// (imex1, imex2 or a limit scheme). Particles are independent; a failing
/// particle keeps its last valid state.
std::vector<ParticleStatus> push_ensemble(std::span<AugmentedState> particles, Scheme scheme, double t0, double dt,
                                          std::int64_t steps, double eps, const FieldModel& fm);
/// Single-threaded version with identical results.
std::vector<ParticleStatus> push_ensemble_serial(std::span<AugmentedState> particles, Scheme scheme, double t0,
                                                 double dt, std::int64_t steps, double eps, const FieldModel& fm);

/// Boris push of Cartesian particles.
std::vector<ParticleStatus> push_ensemble(std::span<PhysicalState> particles, double dt, std::int64_t steps,
                                          double eps, const FieldModel& fm,
                                          BorisVariant variant = BorisVariant::unstaggered);
std::vector<ParticleStatus> push_ensemble_serial(std::span<PhysicalState> particles, double dt, std::int64_t steps,
                                                 double eps, const FieldModel& fm,
                                                 BorisVariant variant = BorisVariant::unstaggered);

/// Applies TORUS_PUSHER_THREADS to the OpenMP runtime if set. Returns the worker count.
int configure_threads();

}  // namespace torus
