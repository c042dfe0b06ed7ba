#include "bintrack/model.hpp"

#include <cmath>
#include <stdexcept>

namespace bintrack {

void TargetState::validate() const {
  if (positions.empty() || positions.size() != velocities.size())
    throw std::invalid_argument("TargetState: positions/velocities size mismatch or empty");
  for (const auto& p : positions)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("TargetState: non-finite position");
  for (const auto& v : velocities)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw std::invalid_argument("TargetState: non-finite velocity");
}

void SensorNetwork::validate() const {
  if (locations.empty()) throw std::invalid_argument("SensorNetwork: needs at least one sensor");
  if (!(p_e >= 0.0 && p_e < 0.5))
    throw std::invalid_argument("SensorNetwork: p_e must lie in [0, 0.5)");
  for (std::size_t i = 0; i < locations.size(); ++i)
    for (std::size_t j = i + 1; j < locations.size(); ++j)
      if (locations[i] == locations[j])
        throw std::invalid_argument("SensorNetwork: sensor locations must be pairwise distinct");
}

int indicator(const Vec2& position, const Vec2& velocity, const Vec2& sensor) {
  // Strict inequality: 0 on the boundary, and 0 for a zero velocity.
  return dot(position - sensor, velocity) < 0.0 ? 1 : 0;
}

BinaryMatrix binary_matrix(const TargetState& state, const SensorNetwork& net) {
  BinaryMatrix m(net.n_sensors(), state.n_targets());
  for (int i = 0; i < m.n_sensors; ++i)
    for (int j = 0; j < m.n_targets; ++j)
      m.at(i, j) = static_cast<std::uint8_t>(
          indicator(state.positions[j], state.velocities[j], net.locations[i]));
  return m;
}

CountVector count_vector(const BinaryMatrix& matrix) {
  CountVector counts(matrix.n_sensors, 0);
  for (int i = 0; i < matrix.n_sensors; ++i) {
    int s = 0;
    for (int j = 0; j < matrix.n_targets; ++j) s += matrix.at(i, j);
    counts[i] = s;
  }
  return counts;
}

BinaryMatrix corrupt(const BinaryMatrix& matrix, double p_e, Rng& rng) {
  // The network invariant is p_e < 0.5; the flip itself is well defined up to
  // 0.5 (fully uninformative sensors), which diagnostics use.
  if (!(p_e >= 0.0 && p_e <= 0.5))
    throw std::invalid_argument("corrupt: p_e must lie in [0, 0.5]");
  BinaryMatrix out = matrix;
  if (p_e == 0.0) return out;
  std::bernoulli_distribution flip(p_e);
  for (auto& e : out.entries)
    if (flip(rng)) e ^= 1u;
  return out;
}

CountVector simulate_counts(const TargetState& state, const SensorNetwork& net) {
  return count_vector(binary_matrix(state, net));
}

}  // namespace bintrack
