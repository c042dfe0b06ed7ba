#ifndef BINTRACK_METRICS_HPP
#define BINTRACK_METRICS_HPP

#include "bintrack/model.hpp"

namespace bintrack {

/// Gaussian kernels scoring how much a proposed state deviates from
/// low-manoeuvre motion relative to the previous state: one factor per target
/// on the turn angle between consecutive headings, one on the change of speed.
struct PseudoLikelihoodParams {
  double sigma_bearing = 0.39269908169872414;  // pi/8 rad
  double sigma_speed = 0.5;                    // m/s

  void validate() const;
};

/// Squared Euclidean distance between two count vectors.
/// Throws std::invalid_argument on a length mismatch.
double rho(const CountVector& c1, const CountVector& c2);

/// Tolerance heuristic N_s * (p_e * N_t)^2; with perfect sensors (p_e = 0)
/// returns 1, the tightest level the strict inequality leaves useful for
/// integer distances.
double tune_epsilon(int n_sensors, int n_targets, double p_e);

/// Product over targets of exp(-dtheta^2 / (2 sigma_bearing^2)) *
/// exp(-dspeed^2 / (2 sigma_speed^2)), dtheta wrapped to (-pi, pi].
/// A zero-magnitude velocity on either side makes that target's bearing
/// factor 1 (the angle is undefined). Result lies in (0, 1].
double pseudo_likelihood(const TargetState& proposed, const TargetState& previous,
                         const PseudoLikelihoodParams& params);

/// Signed smallest rotation from heading(a) to heading(b), in (-pi, pi].
double turn_angle(const Vec2& a, const Vec2& b);

}  // namespace bintrack

#endif
