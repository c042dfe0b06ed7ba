#ifndef BINTRACK_SAMPLERS_HPP
#define BINTRACK_SAMPLERS_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bintrack/metrics.hpp"
#include "bintrack/model.hpp"
#include "bintrack/motion.hpp"
#include "bintrack/scenario.hpp"

namespace bintrack {

enum class Algorithm { AbcRej, AbcRw, AbcPt, Mcmc };

Algorithm parse_algorithm(const std::string& name);  // abc-rej | abc-rw | abc-pt | mcmc
std::string to_string(Algorithm a);

/// Point estimate for one timestep.
struct Estimate {
  enum class Mode { PosteriorMean, Map };

  TargetState state;
  Mode mode = Mode::PosteriorMean;
  bool fallback = false;  // set when a step accepted nothing and fell back to extrapolation
};

/// Accepted draws plus the states actually averaged into the estimate
/// (identical for rejection sampling; the post-burn-in chain for the MCMC
/// variants, holds included).
struct ParticleSet {
  std::vector<TargetState> particles;
  std::vector<TargetState> retained;
  std::vector<double> retained_scores;  // pseudo-likelihood (ABC) or likelihood (baseline)
  long proposed_count = 0;
  long accepted_count = 0;
  int timestep = 0;

  double acceptance_rate() const {
    return proposed_count > 0 ? static_cast<double>(accepted_count) / proposed_count : 0.0;
  }
};

struct SamplerConfig {
  int n_particles = 300;
  std::optional<double> epsilon;  // empty -> tune_epsilon(N_s, N_t, p_e)
  PseudoLikelihoodParams pseudo;
  int n_chains = 5;                    // ABC-PT only
  std::vector<double> epsilon_ladder;  // empty -> geometric (x2) ladder from epsilon
  int swap_pairs_per_sweep = -1;       // -1 -> n_chains - 1 (all adjacent pairs)
  double burn_in_fraction = 0.5;
  double init_radius = 10.0;  // t=0 position prior: uniform disc around truth
  double sigma_init = 0.5;    // t=0 velocity prior std-dev per coordinate
  Estimate::Mode mode = Estimate::Mode::PosteriorMean;
  std::uint64_t seed = 0;

  void validate() const;
  double resolve_epsilon(const SensorNetwork& net, int n_targets) const;
  std::vector<double> resolve_ladder(double eps) const;
};

/// One proposal / swap decision, enough to replay the acceptance rule offline.
struct LogRow {
  int timestep = 0;
  int chain = 0;    // chain index; the receiving (colder) chain for swaps
  long index = 0;   // proposal index within the step / sweep index for swaps
  char kind = 'p';  // 'p' proposal, 's' swap attempt
  bool accepted = false;
  double rho_val = 0.0;  // distance of the candidate's simulated counts to obs
  double score = 0.0;    // pseudo-likelihood or likelihood; source chain for swaps
  double epsilon = 0.0;  // tolerance the decision was taken against
  TargetState state;     // the candidate state
};

struct ParticleLog {
  std::vector<LogRow> rows;

  void write(std::ostream& os) const;
  void write(const std::string& path) const;
};

/// Proposal distributions feeding the samplers. All chains propose
/// independently from the prior, so the prior density cancels out of every
/// Metropolis ratio and the proposals only need to draw.
class Proposal {
 public:
  virtual ~Proposal() = default;
  virtual TargetState sample(Rng& rng) const = 0;
  virtual TargetState mean() const = 0;  // chain seed / zero-acceptance fallback
};

/// The motion prior pi_0 from a previous estimate: velocity ~ N(prev v,
/// sigma2 I), position = prev x + prev v (deterministic).
class MotionProposal final : public Proposal {
 public:
  MotionProposal(TargetState previous, MotionParams motion);
  TargetState sample(Rng& rng) const override;
  TargetState mean() const override;

 private:
  TargetState previous_;
  MotionParams motion_;
};

/// t = 0 initialization prior: position uniform on a disc around the true
/// starting position, velocity ~ N(true v, sigma_init^2 I).
class InitProposal final : public Proposal {
 public:
  InitProposal(TargetState truth, double radius, double sigma_init);
  TargetState sample(Rng& rng) const override;
  TargetState mean() const override;

 private:
  TargetState truth_;
  double radius_;
  double sigma_init_;
};

/// One motion-prior draw from the previous point estimate (Markov step).
TargetState prior_sample(const Estimate& prev, const MotionParams& motion, Rng& rng);

/// Single-target observation likelihood: product over sensors of p_correct
/// when the observed bit matches the noiseless model bit, 1 - p_correct
/// otherwise. Throws for more than one target (no closed form exists) and for
/// observations outside {0,1}.
double exact_likelihood(const CountVector& obs, const TargetState& state,
                        const SensorNetwork& net, double p_correct);

struct StepResult {
  ParticleSet particles;
  Estimate estimate;
};

StepResult abc_rej_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                        const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                        ParticleLog* log = nullptr, int timestep = 0);

StepResult abc_rw_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                       const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                       ParticleLog* log = nullptr, int timestep = 0);

StepResult abc_pt_step(const CountVector& obs, const Estimate& prev, const SensorNetwork& net,
                       const MotionParams& motion, const SamplerConfig& cfg, Rng& rng,
                       ParticleLog* log = nullptr, int timestep = 0);

StepResult mcmc_baseline_step(const CountVector& obs, const Estimate& prev,
                              const SensorNetwork& net, const MotionParams& motion,
                              const SamplerConfig& cfg, Rng& rng, ParticleLog* log = nullptr,
                              int timestep = 0);

/// Generic step drivers over an arbitrary proposal; the named steps above and
/// track() are thin wrappers. prev_ref anchors the pseudo-likelihood.
StepResult run_rejection(const CountVector& obs, const Proposal& prop,
                         const TargetState& prev_ref, const SensorNetwork& net, double eps,
                         const SamplerConfig& cfg, Rng& rng, ParticleLog* log, int timestep);
StepResult run_chain(const CountVector& obs, const Proposal& prop, const TargetState& prev_ref,
                     const SensorNetwork& net, double eps, const SamplerConfig& cfg, Rng& rng,
                     ParticleLog* log, int timestep, bool exact);  // exact: likelihood target, no rho gate
StepResult run_tempered(const CountVector& obs, const Proposal& prop, const TargetState& prev_ref,
                        const SensorNetwork& net, const std::vector<double>& ladder,
                        const SamplerConfig& cfg, Rng& rng, ParticleLog* log, int timestep);

/// Sequential tracking over a whole scenario. t = 0 uses the informative
/// initialization prior; each later step proposes from the motion prior around
/// the previous estimate. Fully reproducible from cfg.seed.
std::vector<StepResult> track(const Scenario& scenario, Algorithm algorithm,
                              const SamplerConfig& cfg, ParticleLog* log = nullptr);

}  // namespace bintrack

#endif
