#include "bintrack/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace bintrack {

void PseudoLikelihoodParams::validate() const {
  if (!(sigma_bearing > 0.0) || !(sigma_speed > 0.0))
    throw std::invalid_argument("PseudoLikelihoodParams: sigmas must be positive");
}

double rho(const CountVector& c1, const CountVector& c2) {
  if (c1.size() != c2.size())
    throw std::invalid_argument("rho: count vector length mismatch");
  long long acc = 0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const long long d = c1[i] - c2[i];
    acc += d * d;
  }
  return static_cast<double>(acc);
}

double tune_epsilon(int n_sensors, int n_targets, double p_e) {
  if (p_e == 0.0) return 1.0;
  const double per_sensor = p_e * n_targets;
  return n_sensors * per_sensor * per_sensor;
}

double turn_angle(const Vec2& a, const Vec2& b) {
  // atan2 of the cross/dot pair wraps to (-pi, pi] without branches.
  const double cross = a.x * b.y - a.y * b.x;
  const double d = dot(a, b);
  return std::atan2(cross, d);
}

double pseudo_likelihood(const TargetState& proposed, const TargetState& previous,
                         const PseudoLikelihoodParams& params) {
  if (proposed.n_targets() != previous.n_targets())
    throw std::invalid_argument("pseudo_likelihood: target count mismatch");
  params.validate();
  double log_f = 0.0;
  for (int j = 0; j < proposed.n_targets(); ++j) {
    const Vec2& vp = previous.velocities[j];
    const Vec2& vn = proposed.velocities[j];
    const double sp = norm(vp);
    const double sn = norm(vn);
    if (sp > 0.0 && sn > 0.0) {
      const double dtheta = turn_angle(vp, vn);
      log_f -= dtheta * dtheta / (2.0 * params.sigma_bearing * params.sigma_bearing);
    }
    const double dspeed = sn - sp;
    log_f -= dspeed * dspeed / (2.0 * params.sigma_speed * params.sigma_speed);
  }
  return std::exp(log_f);
}

}  // namespace bintrack
