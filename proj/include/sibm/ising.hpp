#pragma once

#include "sibm/model.hpp"
#include "sibm/rng.hpp"

namespace sibm {

// Largest n for which the 2^n Gibbs table is enumerated (8 MB of doubles).
inline constexpr int kEnumerationCutoff = 20;

// Log unnormalized weight of sigma under the modified Ising measure:
//   beta * sum_{edges} s_i s_j  -  (alpha*ln(n)/n) * sum_{non-edges} s_i s_j,
// computed in O(|E| + n) via
//   sum_{non-edges} s_i s_j = (S^2 - n)/2 - sum_{edges} s_i s_j,  S = sum s_i.
double log_weight(const LabeledGraph& graph, const std::vector<Spin>& sigma,
                  double alpha, double beta);

// Exact enumeration of the measure at small n. Configurations are indexed by
// bit pattern: bit i set means spin i is +1.
struct GibbsTable {
  int n = 0;
  std::vector<double> log_weights;  // 2^n entries
  double log_z = 0.0;
  std::vector<double> cdf;          // inverse-CDF sampling support

  double prob(std::uint32_t config) const;
};

GibbsTable enumerate_gibbs(const LabeledGraph& graph, double alpha, double beta);

std::uint32_t encode_spins(const std::vector<Spin>& spins);
void decode_spins(std::uint32_t config, int n, std::vector<Spin>& out);

// One exact draw from the normalized table.
SpinSample exact_sample(const GibbsTable& table, Rng& rng);

// MCMC schedule. burn_in_sweeps = 0 means the default 200*ceil(ln n).
// anneal_fraction > 0 ramps the inverse temperature linearly from 0 over the
// leading fraction of burn-in sweeps (the remaining sweeps run at the target
// temperature, so the chain's stationary law is unchanged); used in regimes
// where a hot start can fall into a metastable mode.
struct Schedule {
  int burn_in_sweeps = 0;
  int thinning_sweeps = 5;
  double anneal_fraction = 0.0;
};

Schedule default_schedule(int n);
Schedule resolve_schedule(Schedule schedule, int n);

// n single-site heat-bath updates at uniformly random sites. Site i flips to
// +1 with probability 1/(1+exp(-2 h_i)) where
//   h_i = beta * sum_{j in N(i)} s_j
//       - (alpha*ln(n)/n) * (S - s_i - sum_{j in N(i)} s_j),
// with the total magnetization S maintained incrementally.
void glauber_sweep(const LabeledGraph& graph, double alpha, double beta,
                   SpinSample& state, Rng& rng);

SpinSample random_spins(int n, Rng& rng);

// Burn-in for one chain: hot start assumed, optional anneal ramp, and a fair
// global spin flip after every sweep (an exact move: the measure satisfies
// P(sigma) = P(-sigma)).
void run_burn_in(const LabeledGraph& graph, double alpha, double beta,
                 const Schedule& schedule, SpinSample& state, Rng& rng);

// A fixed number of sweeps at the target temperature, each followed by the
// fair global flip; used between thinned draws.
void advance_chain(const LabeledGraph& graph, double alpha, double beta, int sweeps,
                   SpinSample& state, Rng& rng);

// m samples, one independent chain per sample (fresh uniform initialization,
// burn_in sweeps each); independence across samples is structural.
SampleSet sample_set_mcmc(const LabeledGraph& graph, double alpha, double beta, int m,
                          const Schedule& schedule, Rng& rng);
SampleSet sample_set_mcmc(const LabeledGraph& graph, const SibmParams& params,
                          const Schedule& schedule, Rng& rng);

}  // namespace sibm
