#include "sibm/ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sibm {

namespace {

double nonedge_coefficient(int n, double alpha) {
  return alpha * std::log(static_cast<double>(n)) / n;
}

long long edge_pair_sum(const LabeledGraph& graph, const std::vector<Spin>& sigma) {
  long long sum = 0;
  const int n = graph.n();
  for (int i = 0; i < n; ++i) {
    const int si = sigma[i];
    for (std::int32_t j : graph.adjacency[i]) {
      if (j > i) sum += si * sigma[j];
    }
  }
  return sum;
}

}  // namespace

double log_weight(const LabeledGraph& graph, const std::vector<Spin>& sigma,
                  double alpha, double beta) {
  const int n = graph.n();
  if (static_cast<int>(sigma.size()) != n) {
    throw std::invalid_argument("log_weight: spin length does not match graph");
  }
  long long magnetization = 0;
  for (Spin s : sigma) magnetization += s;
  const long long edges = edge_pair_sum(graph, sigma);
  const long long nonedges = (magnetization * magnetization - n) / 2 - edges;
  return beta * static_cast<double>(edges) -
         nonedge_coefficient(n, alpha) * static_cast<double>(nonedges);
}

double GibbsTable::prob(std::uint32_t config) const {
  return std::exp(log_weights[config] - log_z);
}

std::uint32_t encode_spins(const std::vector<Spin>& spins) {
  std::uint32_t config = 0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] > 0) config |= (1u << i);
  }
  return config;
}

void decode_spins(std::uint32_t config, int n, std::vector<Spin>& out) {
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    out[i] = (config >> i) & 1u ? Spin{1} : Spin{-1};
  }
}

GibbsTable enumerate_gibbs(const LabeledGraph& graph, double alpha, double beta) {
  const int n = graph.n();
  if (n > kEnumerationCutoff) {
    throw std::invalid_argument("enumerate_gibbs: n exceeds cutoff " +
                                std::to_string(kEnumerationCutoff));
  }
  GibbsTable table;
  table.n = n;
  const std::size_t count = std::size_t{1} << n;
  table.log_weights.resize(count);
  std::vector<Spin> spins(n);
  for (std::size_t config = 0; config < count; ++config) {
    decode_spins(static_cast<std::uint32_t>(config), n, spins);
    table.log_weights[config] = log_weight(graph, spins, alpha, beta);
  }
  const double shift = *std::max_element(table.log_weights.begin(), table.log_weights.end());
  double total = 0.0;
  for (double lw : table.log_weights) total += std::exp(lw - shift);
  table.log_z = shift + std::log(total);

  table.cdf.resize(count);
  double running = 0.0;
  for (std::size_t config = 0; config < count; ++config) {
    running += std::exp(table.log_weights[config] - shift) / total;
    table.cdf[config] = running;
  }
  table.cdf.back() = 1.0;
  return table;
}

SpinSample exact_sample(const GibbsTable& table, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  const auto it = std::upper_bound(table.cdf.begin(), table.cdf.end(), u);
  const auto config = static_cast<std::uint32_t>(it - table.cdf.begin());
  SpinSample sample;
  decode_spins(config, table.n, sample.spins);
  return sample;
}

Schedule default_schedule(int n) {
  Schedule schedule;
  schedule.burn_in_sweeps =
      200 * static_cast<int>(std::ceil(std::log(static_cast<double>(std::max(n, 2)))));
  return schedule;
}

Schedule resolve_schedule(Schedule schedule, int n) {
  if (schedule.burn_in_sweeps <= 0) {
    schedule.burn_in_sweeps = default_schedule(n).burn_in_sweeps;
  }
  if (schedule.thinning_sweeps < 1) schedule.thinning_sweeps = 1;
  schedule.anneal_fraction = std::clamp(schedule.anneal_fraction, 0.0, 1.0);
  return schedule;
}

void glauber_sweep(const LabeledGraph& graph, double alpha, double beta,
                   SpinSample& state, Rng& rng) {
  const int n = graph.n();
  if (state.n() != n) throw std::invalid_argument("glauber_sweep: state length mismatch");
  auto& spins = state.spins;
  long long magnetization = 0;
  for (Spin s : spins) magnetization += s;
  const double repulsion = nonedge_coefficient(n, alpha);
  std::uniform_int_distribution<int> site(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int step = 0; step < n; ++step) {
    const int i = site(rng);
    long long neighbor_sum = 0;
    for (std::int32_t j : graph.adjacency[i]) neighbor_sum += spins[j];
    const double field =
        beta * static_cast<double>(neighbor_sum) -
        repulsion * static_cast<double>(magnetization - spins[i] - neighbor_sum);
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * field));
    const Spin updated = unit(rng) < p_plus ? Spin{1} : Spin{-1};
    magnetization += updated - spins[i];
    spins[i] = updated;
  }
}

SpinSample random_spins(int n, Rng& rng) {
  SpinSample sample;
  sample.spins.resize(n);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < n; ++i) sample.spins[i] = bit(rng) ? Spin{1} : Spin{-1};
  return sample;
}

namespace {

void fair_global_flip(SpinSample& state, Rng& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  if (bit(rng)) {
    for (Spin& s : state.spins) s = -s;
  }
}

}  // namespace

void run_burn_in(const LabeledGraph& graph, double alpha, double beta,
                 const Schedule& schedule, SpinSample& state, Rng& rng) {
  const Schedule resolved = resolve_schedule(schedule, graph.n());
  const int ramp =
      static_cast<int>(resolved.anneal_fraction * resolved.burn_in_sweeps);
  for (int sweep = 0; sweep < resolved.burn_in_sweeps; ++sweep) {
    // Scaling both couplings by lambda is a pure temperature scale; the final
    // (burn_in - ramp) sweeps run at the target measure.
    const double lambda =
        sweep < ramp ? static_cast<double>(sweep + 1) / (ramp + 1) : 1.0;
    glauber_sweep(graph, lambda * alpha, lambda * beta, state, rng);
    fair_global_flip(state, rng);
  }
}

void advance_chain(const LabeledGraph& graph, double alpha, double beta, int sweeps,
                   SpinSample& state, Rng& rng) {
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    glauber_sweep(graph, alpha, beta, state, rng);
    fair_global_flip(state, rng);
  }
}

SampleSet sample_set_mcmc(const LabeledGraph& graph, double alpha, double beta, int m,
                          const Schedule& schedule, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sample_set_mcmc: m must be >= 1");
  SampleSet set;
  set.samples.reserve(m);
  for (int j = 0; j < m; ++j) {
    Rng chain_rng(rng());
    SpinSample state = random_spins(graph.n(), chain_rng);
    run_burn_in(graph, alpha, beta, schedule, state, chain_rng);
    set.samples.push_back(std::move(state));
  }
  return set;
}

SampleSet sample_set_mcmc(const LabeledGraph& graph, const SibmParams& params,
                          const Schedule& schedule, Rng& rng) {
  const SibmParams valid = validate_params(params);
  return sample_set_mcmc(graph, valid.alpha, valid.beta, valid.m, schedule, rng);
}

}  // namespace sibm
