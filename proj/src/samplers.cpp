#include "bintrack/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bintrack {

namespace {

constexpr double kPi = 3.14159265358979323846;

TargetState mean_state(const std::vector<TargetState>& states) {
  TargetState m;
  const int nt = states.front().n_targets();
  m.positions.assign(nt, Vec2{});
  m.velocities.assign(nt, Vec2{});
  for (const auto& s : states)
    for (int j = 0; j < nt; ++j) {
      m.positions[j] += s.positions[j];
      m.velocities[j] += s.velocities[j];
    }
  const double inv = 1.0 / static_cast<double>(states.size());
  for (int j = 0; j < nt; ++j) {
    m.positions[j] *= inv;
    m.velocities[j] *= inv;
  }
  return m;
}

Estimate make_estimate(const ParticleSet& ps, Estimate::Mode mode) {
  Estimate e;
  e.mode = mode;
  if (mode == Estimate::Mode::PosteriorMean) {
    e.state = mean_state(ps.retained);
  } else {
    const auto it =
        std::max_element(ps.retained_scores.begin(), ps.retained_scores.end());
    e.state = ps.retained[static_cast<std::size_t>(it - ps.retained_scores.begin())];
  }
  return e;
}

// Metropolis acceptance for an independence proposal drawn from the prior:
// the prior density cancels against the proposal density, leaving the score
// ratio (pseudo-likelihood or likelihood) capped at 1. A zero old score
// degrades to accept-iff-new-score-positive.
bool mh_accept(double u, double score_new, double score_old) {
  if (score_old <= 0.0) return score_new > 0.0;
  return u <= std::min(1.0, score_new / score_old);
}

void log_proposal(ParticleLog* log, int t, int chain, long index, bool accepted,
                  double rho_val, double score, double eps, const TargetState& state) {
  if (!log) return;
  log->rows.push_back(LogRow{t, chain, index, 'p', accepted, rho_val, score, eps, state});
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "abc-rej") return Algorithm::AbcRej;
  if (name == "abc-rw") return Algorithm::AbcRw;
  if (name == "abc-pt") return Algorithm::AbcPt;
  if (name == "mcmc") return Algorithm::Mcmc;
  throw std::invalid_argument("unknown algorithm: " + name +
                              " (expected abc-rej, abc-rw, abc-pt or mcmc)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::AbcRej: return "abc-rej";
    case Algorithm::AbcRw: return "abc-rw";
    case Algorithm::AbcPt: return "abc-pt";
    case Algorithm::Mcmc: return "mcmc";
  }
  return "?";
}

void SamplerConfig::validate() const {
  if (n_particles < 1) throw std::invalid_argument("SamplerConfig: n_particles must be >= 1");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
    throw std::invalid_argument("SamplerConfig: burn_in_fraction must lie in [0, 1)");
  if (epsilon && !(*epsilon >= 0.0))
    throw std::invalid_argument("SamplerConfig: epsilon must be non-negative");
  if (!(init_radius > 0.0) || !(sigma_init > 0.0))
    throw std::invalid_argument("SamplerConfig: init_radius and sigma_init must be positive");
  pseudo.validate();
}

double SamplerConfig::resolve_epsilon(const SensorNetwork& net, int n_targets) const {
  if (!epsilon_ladder.empty()) return epsilon_ladder.front();
  if (epsilon) return *epsilon;
  return tune_epsilon(net.n_sensors(), n_targets, net.p_e);
}

std::vector<double> SamplerConfig::resolve_ladder(double eps) const {
  if (n_chains < 2) throw std::invalid_argument("SamplerConfig: ABC-PT needs n_chains >= 2");
  std::vector<double> ladder = epsilon_ladder;
  if (ladder.empty()) {
    ladder.reserve(n_chains);
    double v = eps;
    for (int k = 0; k < n_chains; ++k, v *= 2.0) ladder.push_back(v);
  }
  if (static_cast<int>(ladder.size()) != n_chains)
    throw std::invalid_argument("SamplerConfig: epsilon_ladder length must equal n_chains");
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (!(ladder[k] > ladder[k - 1]))
      throw std::invalid_argument("SamplerConfig: epsilon_ladder must be strictly increasing");
  return ladder;
}

void ParticleLog::write(std::ostream& os) const {
  os << "# t chain index kind accepted rho score epsilon x y vx vy (per target)\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) {
    os << r.timestep << ' ' << r.chain << ' ' << r.index << ' ' << r.kind << ' '
       << (r.accepted ? 1 : 0) << ' ' << r.rho_val << ' ' << r.score << ' ' << r.epsilon;
    for (int j = 0; j < r.state.n_targets(); ++j)
      os << ' ' << r.state.positions[j].x << ' ' << r.state.positions[j].y << ' '
         << r.state.velocities[j].x << ' ' << r.state.velocities[j].y;
    os << '\n';
  }
}

void ParticleLog::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  write(f);
}

MotionProposal::MotionProposal(TargetState previous, MotionParams motion)
    : previous_(std::move(previous)), motion_(motion) {}

TargetState MotionProposal::sample(Rng& rng) const {
  return propagate(previous_, motion_, rng);
}

TargetState MotionProposal::mean() const { return extrapolate(previous_); }

InitProposal::InitProposal(TargetState truth, double radius, double sigma_init)
    : truth_(std::move(truth)), radius_(radius), sigma_init_(sigma_init) {}

TargetState InitProposal::sample(Rng& rng) const {
  TargetState s;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, sigma_init_);
  for (int j = 0; j < truth_.n_targets(); ++j) {
    // Uniform on the disc: radius ~ sqrt(u), angle uniform.
    const double r = radius_ * std::sqrt(u01(rng));
    const double a = 2.0 * kPi * u01(rng);
    s.positions.push_back(truth_.positions[j] + Vec2(r * std::cos(a), r * std::sin(a)));
    s.velocities.push_back(truth_.velocities[j] + Vec2(noise(rng), noise(rng)));
  }
  return s;
}

TargetState InitProposal::mean() const { return truth_; }

TargetState prior_sample(const Estimate& prev, const MotionParams& motion, Rng& rng) {
  return propagate(prev.state, motion, rng);
}

double exact_likelihood(const CountVector& obs, const TargetState& state,
                        const SensorNetwork& net, double p_correct) {
  if (state.n_targets() != 1)
    throw std::invalid_argument("exact_likelihood: defined for a single target only");
  if (obs.size() != static_cast<std::size_t>(net.n_sensors()))
    throw std::invalid_argument("exact_likelihood: observation length mismatch");
  if (!(p_correct >= 0.0 && p_correct <= 1.0))
    throw std::invalid_argument("exact_likelihood: p_correct must lie in [0, 1]");
  double lik = 1.0;
  for (int i = 0; i < net.n_sensors(); ++i) {
    const int c = obs[i];
    if (c != 0 && c != 1)
      throw std::invalid_argument("exact_likelihood: single-target counts must be 0 or 1");
    const int a = indicator(state.positions[0], state.velocities[0], net.locations[i]);
    lik *= (c == a) ? p_correct : 1.0 - p_correct;
  }
  return lik;
}

StepResult run_rejection(const CountVector& obs, const Proposal& prop,
                         const TargetState& prev_ref, const SensorNetwork& net, double eps,
                         const SamplerConfig& cfg, Rng& rng, ParticleLog* log, int timestep) {
  ParticleSet ps;
  ps.timestep = timestep;
  ps.proposed_count = cfg.n_particles;
  for (long i = 0; i < cfg.n_particles; ++i) {
    TargetState s = prop.sample(rng);
    const double r = rho(simulate_counts(s, net), obs);
    const double f = pseudo_likelihood(s, prev_ref, cfg.pseudo);
    const bool accepted = r < eps;
    log_proposal(log, timestep, 0, i, accepted, r, f, eps, s);
    if (accepted) {
      ps.particles.push_back(s);
      ps.retained.push_back(std::move(s));
      ps.retained_scores.push_back(f);
      ++ps.accepted_count;
    }
  }
  StepResult out;
  if (ps.accepted_count == 0) {
    out.estimate.state = prop.mean();
    out.estimate.mode = cfg.mode;
    out.estimate.fallback = true;
  } else {
    out.estimate = make_estimate(ps, cfg.mode);
  }
  out.particles = std::move(ps);
  return out;
}

StepResult run_chain(const CountVector& obs, const Proposal& prop, const TargetState& prev_ref,
                     const SensorNetwork& net, double eps, const SamplerConfig& cfg, Rng& rng,
                     ParticleLog* log, int timestep, bool exact) {
  const double p_correct = 1.0 - net.p_e;
  auto score_of = [&](const TargetState& s) {
    return exact ? exact_likelihood(obs, s, net, p_correct)
                 : pseudo_likelihood(s, prev_ref, cfg.pseudo);
  };

  TargetState cur = prop.mean();
  double cur_score = score_of(cur);

  ParticleSet ps;
  ps.timestep = timestep;
  ps.proposed_count = cfg.n_particles;
  std::vector<TargetState> chain;
  std::vector<double> chain_scores;
  chain.reserve(cfg.n_particles);
  chain_scores.reserve(cfg.n_particles);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (long i = 0; i < cfg.n_particles; ++i) {
    TargetState s = prop.sample(rng);
    const double r = rho(simulate_counts(s, net), obs);
    const double u = u01(rng);
    const double score = score_of(s);
    const bool rho_ok = exact || r < eps;
    const bool accepted = rho_ok && mh_accept(u, score, cur_score);
    log_proposal(log, timestep, 0, i, accepted, r, score, eps, s);
    if (accepted) {
      cur = s;
      cur_score = score;
      ps.particles.push_back(std::move(s));
      ++ps.accepted_count;
    }
    chain.push_back(cur);  // hold on reject
    chain_scores.push_back(cur_score);
  }

  const long burn = static_cast<long>(cfg.burn_in_fraction * cfg.n_particles);
  ps.retained.assign(chain.begin() + burn, chain.end());
  ps.retained_scores.assign(chain_scores.begin() + burn, chain_scores.end());

  StepResult out;
  out.estimate = make_estimate(ps, cfg.mode);
  out.estimate.fallback = (ps.accepted_count == 0);
  out.particles = std::move(ps);
  return out;
}

StepResult run_tempered(const CountVector& obs, const Proposal& prop, const TargetState& prev_ref,
                        const SensorNetwork& net, const std::vector<double>& ladder,
                        const SamplerConfig& cfg, Rng& rng, ParticleLog* log, int timestep) {
  const int n_chains = static_cast<int>(ladder.size());
  struct ChainState {
    TargetState state;
    double score;
    double rho_val;
  };

  const TargetState seed_state = prop.mean();
  const double seed_score = pseudo_likelihood(seed_state, prev_ref, cfg.pseudo);
  const double seed_rho = rho(simulate_counts(seed_state, net), obs);
  std::vector<ChainState> chains(static_cast<std::size_t>(n_chains),
                                 ChainState{seed_state, seed_score, seed_rho});

  ParticleSet ps;
  ps.timestep = timestep;
  ps.proposed_count = cfg.n_particles;
  std::vector<TargetState> trace;
  std::vector<double> trace_scores;
  trace.reserve(cfg.n_particles);
  trace_scores.reserve(cfg.n_particles);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  long swaps_into_cold = 0;
  const int pairs_per_sweep =
      cfg.swap_pairs_per_sweep < 0
          ? n_chains - 1
          : std::min(cfg.swap_pairs_per_sweep, n_chains - 1);

  std::vector<int> pair_order(static_cast<std::size_t>(n_chains - 1));
  std::iota(pair_order.begin(), pair_order.end(), 0);

  for (long i = 0; i < cfg.n_particles; ++i) {
    // Local moves: one ABC-RW update per chain at its own tolerance.
    for (int k = 0; k < n_chains; ++k) {
      ChainState& ch = chains[static_cast<std::size_t>(k)];
      TargetState s = prop.sample(rng);
      const double r = rho(simulate_counts(s, net), obs);
      const double u = u01(rng);
      const double score = pseudo_likelihood(s, prev_ref, cfg.pseudo);
      const bool accepted =
          r < ladder[static_cast<std::size_t>(k)] && mh_accept(u, score, ch.score);
      log_proposal(log, timestep, k, i, accepted, r, score, ladder[static_cast<std::size_t>(k)],
                   s);
      if (accepted) {
        ch = ChainState{s, score, r};
        if (k == 0) {
          ps.particles.push_back(std::move(s));
          ++ps.accepted_count;
        }
      }
    }

    // Swap sweep over adjacent ladder pairs in randomized order: the hotter
    // chain's state is copied down iff it meets the colder tolerance.
    std::shuffle(pair_order.begin(), pair_order.end(), rng);
    for (int p = 0; p < pairs_per_sweep; ++p) {
      const int cold = pair_order[static_cast<std::size_t>(p)];
      const int hot = cold + 1;
      const ChainState& hot_ch = chains[static_cast<std::size_t>(hot)];
      const bool swap_ok = hot_ch.rho_val < ladder[static_cast<std::size_t>(cold)];
      if (log)
        log->rows.push_back(LogRow{timestep, cold, i, 's', swap_ok, hot_ch.rho_val,
                                   static_cast<double>(hot), ladder[static_cast<std::size_t>(cold)],
                                   hot_ch.state});
      if (swap_ok) {
        chains[static_cast<std::size_t>(cold)] = hot_ch;
        if (cold == 0) ++swaps_into_cold;
      }
    }

    trace.push_back(chains[0].state);
    trace_scores.push_back(chains[0].score);
  }

  const long burn = static_cast<long>(cfg.burn_in_fraction * cfg.n_particles);
  ps.retained.assign(trace.begin() + burn, trace.end());
  ps.retained_scores.assign(trace_scores.begin() + burn, trace_scores.end());

  StepResult out;
  out.estimate = make_estimate(ps, cfg.mode);
  out.estimate.fallback = (ps.accepted_count == 0 && swaps_into_cold == 0);
  out.particles = std::move(ps);
  return out;
}

StepResult abc_rej_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                        const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                        ParticleLog* log, int timestep) {
  cfg.validate();
  MotionProposal prop(prev.state, motion);
  return run_rejection(obs, prop, prev.state, net,
                       cfg.resolve_epsilon(net, prev.state.n_targets()), cfg, rng, log, timestep);
}

StepResult abc_rw_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                       const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                       ParticleLog* log, int timestep) {
  cfg.validate();
  MotionProposal prop(prev.state, motion);
  return run_chain(obs, prop, prev.state, net,
                   cfg.resolve_epsilon(net, prev.state.n_targets()), cfg, rng, log, timestep,
                   /*exact=*/false);
}

StepResult abc_pt_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                       const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                       ParticleLog* log, int timestep) {
  cfg.validate();
  MotionProposal prop(prev.state, motion);
  const double eps = cfg.resolve_epsilon(net, prev.state.n_targets());
  return run_tempered(obs, prop, prev.state, net, cfg.resolve_ladder(eps), cfg, rng, log,
                      timestep);
}

StepResult mcmc_baseline_step(const CountVector& obs, const Estimate& prev,
                              const SensorNetwork& net, const MotionParams& motion,
                              const SamplerConfig& cfg, Rng& rng, ParticleLog* log,
                              int timestep) {
  cfg.validate();
  if (prev.state.n_targets() != 1)
    throw std::invalid_argument("mcmc baseline: exact likelihood exists for one target only");
  MotionProposal prop(prev.state, motion);
  return run_chain(obs, prop, prev.state, net, 0.0, cfg, rng, log, timestep, /*exact=*/true);
}

std::vector<StepResult> track(const Scenario& scenario, Algorithm algorithm,
                              const SamplerConfig& cfg, ParticleLog* log) {
  cfg.validate();
  scenario.validate();
  if (algorithm == Algorithm::Mcmc && scenario.n_targets() != 1)
    throw std::invalid_argument("mcmc baseline: exact likelihood exists for one target only");

  const double eps = cfg.resolve_epsilon(scenario.net, scenario.n_targets());
  const std::vector<double> ladder =
      algorithm == Algorithm::AbcPt ? cfg.resolve_ladder(eps) : std::vector<double>{};

  std::vector<StepResult> results;
  results.reserve(scenario.duration);
  Estimate prev;

  for (int t = 0; t < scenario.duration; ++t) {
    Rng step_rng = make_rng(cfg.seed, 0x73746570ULL, static_cast<std::uint64_t>(t));
    std::unique_ptr<Proposal> prop;
    TargetState prev_ref;
    if (t == 0) {
      prop = std::make_unique<InitProposal>(scenario.truth.front(), cfg.init_radius,
                                            cfg.sigma_init);
      prev_ref = scenario.truth.front();
    } else {
      prop = std::make_unique<MotionProposal>(prev.state, scenario.motion);
      prev_ref = prev.state;
    }
    const CountVector& obs = scenario.observations[static_cast<std::size_t>(t)];

    StepResult step;
    switch (algorithm) {
      case Algorithm::AbcRej:
        step = run_rejection(obs, *prop, prev_ref, scenario.net, eps, cfg, step_rng, log, t);
        break;
      case Algorithm::AbcRw:
        step = run_chain(obs, *prop, prev_ref, scenario.net, eps, cfg, step_rng, log, t,
                         /*exact=*/false);
        break;
      case Algorithm::AbcPt:
        step = run_tempered(obs, *prop, prev_ref, scenario.net, ladder, cfg, step_rng, log, t);
        break;
      case Algorithm::Mcmc:
        step = run_chain(obs, *prop, prev_ref, scenario.net, 0.0, cfg, step_rng, log, t,
                         /*exact=*/true);
        break;
    }
    prev = step.estimate;
    results.push_back(std::move(step));
  }
  return results;
}

}  // namespace bintrack
