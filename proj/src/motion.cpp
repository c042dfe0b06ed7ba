#include "bintrack/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace bintrack {

void MotionParams::validate() const {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("MotionParams: sigma2 must be positive and finite");
}

TargetState propagate(const TargetState& state, const MotionParams& motion, Rng& rng) {
  TargetState next;
  const int nt = state.n_targets();
  next.positions.reserve(nt);
  next.velocities.reserve(nt);
  const double sigma = std::sqrt(motion.sigma2);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int j = 0; j < nt; ++j) {
    next.positions.push_back(state.positions[j] + state.velocities[j]);
    Vec2 v = state.velocities[j];
    if (sigma > 0.0) {
      v.x += sigma * noise(rng);
      v.y += sigma * noise(rng);
    }
    next.velocities.push_back(v);
  }
  return next;
}

TargetState extrapolate(const TargetState& state) {
  TargetState next;
  const int nt = state.n_targets();
  next.positions.reserve(nt);
  next.velocities.reserve(nt);
  for (int j = 0; j < nt; ++j) {
    next.positions.push_back(state.positions[j] + state.velocities[j]);
    next.velocities.push_back(state.velocities[j]);
  }
  return next;
}

}  // namespace bintrack
