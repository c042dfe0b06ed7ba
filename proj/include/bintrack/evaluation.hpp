#ifndef BINTRACK_EVALUATION_HPP
#define BINTRACK_EVALUATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bintrack/samplers.hpp"

namespace bintrack {

struct Checkpoint {
  int t = 0;
  double rmse = 0.0;     // mean over repetitions of the per-run RMSE
  double std_dev = 0.0;  // std deviation of the per-run RMSE
  double std_err = 0.0;  // std_dev / sqrt(n)
};

struct RmseReport {
  Algorithm algorithm = Algorithm::AbcRej;
  int n_targets = 0;
  int n_sensors = 0;
  std::vector<Checkpoint> checkpoints;  // sorted by t
  int n_reps = 0;                       // repetitions that completed
};

/// One long-format row: a single repetition evaluated at one checkpoint.
struct RmseSample {
  Algorithm algorithm;
  int n_targets;
  int n_sensors;
  int rep;
  int t;
  double rmse;
};

/// Assignment-matched position RMSE of one estimated state against truth:
/// sqrt(min over target permutations of the mean squared position error).
double position_rmse(const TargetState& estimate, const TargetState& truth);

/// Same, indexed into per-timestep sequences.
double position_rmse(const std::vector<Estimate>& estimates,
                     const std::vector<TargetState>& truth, int t);

struct ExperimentGrid {
  std::vector<int> target_counts;
  std::vector<int> sensor_counts;
  std::vector<Algorithm> algorithms;
};

struct ExperimentConfig {
  MotionParams motion;
  double p_e = 0.05;
  int duration = 30;
  double init_speed = 2.0;
  std::string sensor_layout = "grid";  // grid | random
  std::vector<int> checkpoints = {10, 20, 30};
  SamplerConfig sampler;
  int workers = 1;
};

struct ExperimentResult {
  std::vector<RmseReport> reports;
  std::vector<RmseSample> samples;  // long format, deterministic order
};

/// Runs n_reps independent scenarios per grid cell with seeds derived from the
/// master seed, tracks each with the cell's algorithm and aggregates RMSE at
/// the checkpoints. Identical output for any worker count.
ExperimentResult run_experiment(const ExperimentGrid& grid, int n_reps,
                                const ExperimentConfig& cfg, std::uint64_t master_seed);

/// Table-layout report (one block per target count, algorithms as columns) and
/// long-format dump.
void write_report_table(const std::vector<RmseReport>& reports, std::ostream& os);
void write_long_format(const std::vector<RmseSample>& samples, std::ostream& os);

}  // namespace bintrack

#endif
