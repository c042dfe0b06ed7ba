#ifndef BINTRACK_SCENARIO_HPP
#define BINTRACK_SCENARIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bintrack/model.hpp"
#include "bintrack/motion.hpp"

namespace bintrack {

/// Full simulation: configuration, ground truth and the observation sequence.
struct Scenario {
  SensorNetwork net;
  MotionParams motion;
  int duration = 0;  // timesteps (1 s each)
  std::vector<TargetState> truth;     // duration entries, index 0 = initial state
  std::vector<CountVector> observations;
  std::uint64_t seed = 0;
  double init_speed = 2.0;
  double start_radius = 40.0;

  int n_targets() const { return truth.empty() ? 0 : truth.front().n_targets(); }
  void validate() const;
};

/// Evenly spaced n x n sensor grid over [-half, half]^2; n_sensors must be a
/// perfect square.
SensorNetwork grid_network(int n_sensors, double p_e, double half = 50.0);

/// Uniform-random sensor placement over [-half, half]^2.
SensorNetwork random_network(int n_sensors, double p_e, std::uint64_t seed, double half = 50.0);

/// Generates ground truth and observations. Starting positions are uniform on
/// the circle of radius start_radius centred at the origin; initial velocities
/// point at the origin with magnitude init_speed. Observations are the
/// corrupted count vectors of each truth state. Reproducible from seed: the
/// trajectory and observation streams are derived independently, so the same
/// truth regenerates under any p_e.
Scenario make_scenario(int n_targets, const SensorNetwork& net, const MotionParams& motion,
                       int duration, std::uint64_t seed, double init_speed = 2.0,
                       double start_radius = 40.0);

/// Plain-text serialization; round trips are lossless (doubles printed with
/// max_digits10).
void save_scenario(const Scenario& s, std::ostream& os);
void save_scenario(const Scenario& s, const std::string& path);
Scenario load_scenario(std::istream& is);
Scenario load_scenario(const std::string& path);

}  // namespace bintrack

#endif
