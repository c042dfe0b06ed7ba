#ifndef BINTRACK_CONFIG_HPP
#define BINTRACK_CONFIG_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bintrack/samplers.hpp"

namespace bintrack {

/// Flat key = value configuration file. Unknown keys are errors; missing
/// required keys are reported by name when a command asks for them.
struct RunConfig {
  // scenario
  std::uint64_t seed = 0;
  int n_targets = 0;
  int n_sensors = 0;
  int duration = 30;
  double sigma2 = 0.01;
  double p_e = 0.05;
  double init_speed = 2.0;
  double start_radius = 40.0;
  std::string sensor_layout = "grid";

  // sampler
  std::string algorithm;  // empty until set by config or CLI flag
  SamplerConfig sampler;

  // experiment grid
  std::vector<int> targets_list;
  std::vector<int> sensors_list;
  std::vector<std::string> algorithms_list;
  std::vector<int> checkpoints = {10, 20, 30};
  int n_reps = 100;
  int workers = 1;

  std::set<std::string> keys_present;
  std::string config_hash;  // FNV-1a over the raw file bytes, hex

  MotionParams motion() const { return MotionParams{sigma2}; }
  SensorNetwork build_network(std::uint64_t layout_seed) const;
  void require(const std::vector<std::string>& keys) const;  // throws naming the first missing key
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);  // hash computed over text

}  // namespace bintrack

#endif
