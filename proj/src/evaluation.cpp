#include "bintrack/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bintrack {

double position_rmse(const TargetState& estimate, const TargetState& truth) {
  const int nt = truth.n_targets();
  if (estimate.n_targets() != nt)
    throw std::invalid_argument("position_rmse: target count mismatch");
  std::vector<int> perm(static_cast<std::size_t>(nt));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  // Brute-force minimum assignment; target counts here stay small.
  do {
    double sum = 0.0;
    for (int j = 0; j < nt; ++j)
      sum += norm2(estimate.positions[static_cast<std::size_t>(perm[j])] - truth.positions[j]);
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::sqrt(best / nt);
}

double position_rmse(const std::vector<Estimate>& estimates,
                     const std::vector<TargetState>& truth, int t) {
  return position_rmse(estimates.at(static_cast<std::size_t>(t)).state,
                       truth.at(static_cast<std::size_t>(t)));
}

namespace {

struct Cell {
  int n_targets;
  int n_sensors;
  Algorithm algorithm;
};

struct TaskResult {
  bool ok = false;
  std::vector<double> rmse;  // one per checkpoint
};

TaskResult run_one(const Cell& cell, int cell_idx, int rep, const ExperimentConfig& cfg,
                   std::uint64_t master_seed) {
  TaskResult res;
  try {
    // The scenario seed depends only on (n_targets, n_sensors, rep), so every
    // algorithm sees the same simulated truth for a given repetition and the
    // comparison across algorithms is paired.
    const std::uint64_t scen_key =
        (static_cast<std::uint64_t>(cell.n_targets) << 16) |
        static_cast<std::uint64_t>(cell.n_sensors);
    const std::uint64_t scen_seed = derive_seed(master_seed, scen_key, rep, 1);
    const std::uint64_t samp_seed =
        derive_seed(master_seed, static_cast<std::uint64_t>(cell_idx), rep, 2);
    SensorNetwork net = cfg.sensor_layout == "random"
                            ? random_network(cell.n_sensors, cfg.p_e, scen_seed)
                            : grid_network(cell.n_sensors, cfg.p_e);
    Scenario scen = make_scenario(cell.n_targets, net, cfg.motion, cfg.duration, scen_seed,
                                  cfg.init_speed);
    SamplerConfig scfg = cfg.sampler;
    scfg.seed = samp_seed;
    const auto steps = track(scen, cell.algorithm, scfg);
    res.rmse.reserve(cfg.checkpoints.size());
    for (int sec : cfg.checkpoints) {
      // Checkpoints are seconds into the run; truth index 0 is the first second.
      const int idx = sec - 1;
      if (idx < 0 || idx >= scen.duration)
        throw std::invalid_argument("checkpoint beyond scenario duration");
      res.rmse.push_back(position_rmse(steps[static_cast<std::size_t>(idx)].estimate.state,
                                       scen.truth[static_cast<std::size_t>(idx)]));
    }
    res.ok = true;
  } catch (const std::exception&) {
    res.ok = false;
  }
  return res;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentGrid& grid, int n_reps,
                                const ExperimentConfig& cfg, std::uint64_t master_seed) {
  if (n_reps < 1) throw std::invalid_argument("run_experiment: n_reps must be >= 1");
  std::vector<Cell> cells;
  for (int nt : grid.target_counts)
    for (int ns : grid.sensor_counts)
      for (Algorithm a : grid.algorithms) cells.push_back(Cell{nt, ns, a});

  const std::size_t n_tasks = cells.size() * static_cast<std::size_t>(n_reps);
  std::vector<TaskResult> results(n_tasks);

  const int workers = std::max(1, cfg.workers);
  std::atomic<std::size_t> next{0};
  auto worker_fn = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      const int cell_idx = static_cast<int>(i / static_cast<std::size_t>(n_reps));
      const int rep = static_cast<int>(i % static_cast<std::size_t>(n_reps));
      results[i] = run_one(cells[static_cast<std::size_t>(cell_idx)], cell_idx, rep, cfg,
                           master_seed);
    }
  };
  if (workers == 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& th : pool) th.join();
  }

  ExperimentResult out;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    RmseReport report;
    report.algorithm = cell.algorithm;
    report.n_targets = cell.n_targets;
    report.n_sensors = cell.n_sensors;

    std::vector<std::vector<double>> per_checkpoint(cfg.checkpoints.size());
    for (int rep = 0; rep < n_reps; ++rep) {
      const TaskResult& tr = results[ci * static_cast<std::size_t>(n_reps) + rep];
      if (!tr.ok) continue;
      for (std::size_t k = 0; k < cfg.checkpoints.size(); ++k) {
        per_checkpoint[k].push_back(tr.rmse[k]);
        out.samples.push_back(RmseSample{cell.algorithm, cell.n_targets, cell.n_sensors, rep,
                                         cfg.checkpoints[k], tr.rmse[k]});
      }
    }
    report.n_reps = per_checkpoint.empty() ? 0 : static_cast<int>(per_checkpoint[0].size());
    for (std::size_t k = 0; k < cfg.checkpoints.size(); ++k) {
      Checkpoint cp;
      cp.t = cfg.checkpoints[k];
      const auto& v = per_checkpoint[k];
      const int n = static_cast<int>(v.size());
      if (n > 0) {
        cp.rmse = std::accumulate(v.begin(), v.end(), 0.0) / n;
        if (n > 1) {
          double ss = 0.0;
          for (double x : v) ss += (x - cp.rmse) * (x - cp.rmse);
          cp.std_dev = std::sqrt(ss / (n - 1));
          cp.std_err = cp.std_dev / std::sqrt(static_cast<double>(n));
        } else {
          cp.std_dev = std::numeric_limits<double>::quiet_NaN();
          cp.std_err = std::numeric_limits<double>::quiet_NaN();
        }
      }
      report.checkpoints.push_back(cp);
    }
    out.reports.push_back(std::move(report));
  }
  return out;
}

namespace {

std::string fmt_cell(double mean, double sd) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << mean << " (";
  if (std::isnan(sd))
    os << "NA";
  else
    os << std::fixed << std::setprecision(2) << sd;
  os << ")";
  return os.str();
}

}  // namespace

void write_report_table(const std::vector<RmseReport>& reports, std::ostream& os) {
  // Column per (n_sensors, algorithm), row per (n_targets, checkpoint t).
  std::vector<int> sensor_counts, target_counts, times;
  std::vector<Algorithm> algorithms;
  for (const auto& r : reports) {
    if (std::find(sensor_counts.begin(), sensor_counts.end(), r.n_sensors) ==
        sensor_counts.end())
      sensor_counts.push_back(r.n_sensors);
    if (std::find(target_counts.begin(), target_counts.end(), r.n_targets) ==
        target_counts.end())
      target_counts.push_back(r.n_targets);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end())
      algorithms.push_back(r.algorithm);
    for (const auto& cp : r.checkpoints)
      if (std::find(times.begin(), times.end(), cp.t) == times.end()) times.push_back(cp.t);
  }
  std::sort(sensor_counts.begin(), sensor_counts.end());
  std::sort(target_counts.begin(), target_counts.end());
  std::sort(times.begin(), times.end());

  auto find_report = [&](int nt, int ns, Algorithm a) -> const RmseReport* {
    for (const auto& r : reports)
      if (r.n_targets == nt && r.n_sensors == ns && r.algorithm == a) return &r;
    return nullptr;
  };

  os << "# position RMSE, mean (std dev of per-run RMSE) over repetitions\n";
  os << std::left << std::setw(8) << "N_t" << std::setw(6) << "t";
  for (int ns : sensor_counts)
    for (Algorithm a : algorithms) {
      std::ostringstream h;
      h << "Ns" << ns << ":" << to_string(a);
      os << std::setw(18) << h.str();
    }
  os << "\n";
  for (int nt : target_counts)
    for (int t : times) {
      os << std::left << std::setw(8) << nt << std::setw(6) << t;
      for (int ns : sensor_counts)
        for (Algorithm a : algorithms) {
          const RmseReport* r = find_report(nt, ns, a);
          std::string cell = "-";
          if (r)
            for (const auto& cp : r->checkpoints)
              if (cp.t == t) cell = fmt_cell(cp.rmse, cp.std_dev);
          os << std::setw(18) << cell;
        }
      os << "\n";
    }
}

void write_long_format(const std::vector<RmseSample>& samples, std::ostream& os) {
  os << "algorithm n_targets n_sensors rep t rmse\n";
  os << std::fixed << std::setprecision(6);
  for (const auto& s : samples)
    os << to_string(s.algorithm) << ' ' << s.n_targets << ' ' << s.n_sensors << ' ' << s.rep
       << ' ' << s.t << ' ' << s.rmse << "\n";
}

}  // namespace bintrack
