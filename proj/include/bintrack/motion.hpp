#ifndef BINTRACK_MOTION_HPP
#define BINTRACK_MOTION_HPP

#include "bintrack/model.hpp"
#include "bintrack/rng.hpp"

namespace bintrack {

/// Gaussian random-walk velocity model: v_t ~ N(v_{t-1}, sigma2 I),
/// x_t = x_{t-1} + v_{t-1}. Velocity transition matrix fixed to identity,
/// timestep fixed to 1 s.
struct MotionParams {
  double sigma2 = 0.01;  // velocity-noise variance per coordinate

  void validate() const;
};

/// One Markov step. Position advances by the OLD velocity; the new velocity
/// gets independent N(0, sigma2) increments per coordinate per target.
/// sigma2 == 0 is the noiseless limit (pure extrapolation).
TargetState propagate(const TargetState& state, const MotionParams& motion, Rng& rng);

/// Noiseless one-step extrapolation (the sigma2 -> 0 limit of propagate).
TargetState extrapolate(const TargetState& state);

}  // namespace bintrack

#endif
