#ifndef BINTRACK_MODEL_HPP
#define BINTRACK_MODEL_HPP

#include <cstdint>
#include <vector>

#include "bintrack/geom.hpp"
#include "bintrack/rng.hpp"

namespace bintrack {

/// Joint state of all targets at one timestep.
struct TargetState {
  std::vector<Vec2> positions;   // meters
  std::vector<Vec2> velocities;  // meters/second

  int n_targets() const { return static_cast<int>(positions.size()); }
  void validate() const;  // throws std::invalid_argument on broken invariants
};

/// Fixed 2-D sensor locations plus the per-indicator flip probability.
struct SensorNetwork {
  std::vector<Vec2> locations;
  double p_e = 0.0;  // probability a per-target closer/away bit is flipped, in [0, 0.5)

  int n_sensors() const { return static_cast<int>(locations.size()); }
  void validate() const;
};

/// N_s x N_t matrix of per-target closer(1)/away(0) bits, one row per sensor.
struct BinaryMatrix {
  int n_sensors = 0;
  int n_targets = 0;
  std::vector<std::uint8_t> entries;  // row-major

  BinaryMatrix() = default;
  BinaryMatrix(int ns, int nt)
      : n_sensors(ns), n_targets(nt), entries(static_cast<std::size_t>(ns) * nt, 0) {}

  std::uint8_t& at(int sensor, int target) {
    return entries[static_cast<std::size_t>(sensor) * n_targets + target];
  }
  std::uint8_t at(int sensor, int target) const {
    return entries[static_cast<std::size_t>(sensor) * n_targets + target];
  }
  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) = default;
};

/// Per-sensor counts of approaching targets; the observation at one timestep.
using CountVector = std::vector<int>;

/// 1 iff the target is getting closer to the sensor: <position - sensor, velocity> < 0.
/// An inner product of exactly 0 (including a zero velocity) classifies as moving away.
int indicator(const Vec2& position, const Vec2& velocity, const Vec2& sensor);

/// Noiseless closer/away matrix for every (sensor, target) pair.
BinaryMatrix binary_matrix(const TargetState& state, const SensorNetwork& net);

/// Row sums of the matrix.
CountVector count_vector(const BinaryMatrix& matrix);

/// Flips each entry independently with probability p_e. The flip mask depends
/// only on the rng stream, not on the matrix content.
BinaryMatrix corrupt(const BinaryMatrix& matrix, double p_e, Rng& rng);

/// Convenience: noiseless counts for a state.
CountVector simulate_counts(const TargetState& state, const SensorNetwork& net);

}  // namespace bintrack

#endif
