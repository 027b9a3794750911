// Acceptance suite: runs the project's ten exit criteria and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sibm/experiments.hpp"
#include "sibm/ising.hpp"
#include "sibm/model.hpp"
#include "sibm/recover.hpp"
#include "sibm/rng.hpp"
#include "sibm/ssbm.hpp"
#include "sibm/stats.hpp"
#include "sibm/theory.hpp"

using namespace sibm;

namespace {

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 2 : static_cast<int>(hw);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

ExperimentConfig config_from(const std::string& text) {
  std::istringstream in(text);
  ExperimentConfig config = parse_config(in);
  config.workers = worker_count();
  return config;
}

std::string fmt(double v) { return format_value(v); }

// --- criterion 1: sampler exactness -----------------------------------------

Outcome sampler_exactness() {
  // 20 random graphs at n=8 with rates from (a=9, b=1) clamped into [0,1];
  // TV of 1e6 thinned Glauber draws (default schedule) against the table.
  ExperimentConfig config = config_from(
      "mode = sampler_validation\nn = 8\na = 9\nb = 1\nalpha = 2\nbeta = 0.3\n"
      "trials = 20\nseed = 10801\ndraws = 1000000\n");
  const ExperimentResult result = run_sampler_validation(config);
  double max_tv = 0.0;
  for (const auto& record : result.trials) max_tv = std::max(max_tv, record.statistic);

  // Detailed balance, exhaustive at n=6 over three random graphs.
  double worst_db = 0.0;
  Rng rng = make_rng(10802);
  for (int trial = 0; trial < 3; ++trial) {
    const auto [p, q] = clamped_edge_rates(6, 9, 1);
    const Partition partition = random_balanced_partition(6, rng);
    const LabeledGraph graph = sample_graph(partition, p, q, rng);
    const double alpha = 2.0, beta = 0.3;
    const GibbsTable table = enumerate_gibbs(graph, alpha, beta);
    const double repulsion = alpha * std::log(6.0) / 6;
    std::vector<Spin> sigma;
    for (std::uint32_t c = 0; c < 64; ++c) {
      decode_spins(c, 6, sigma);
      long long magnetization = 0;
      for (Spin s : sigma) magnetization += s;
      for (int i = 0; i < 6; ++i) {
        long long neighbor_sum = 0;
        for (std::int32_t j : graph.adjacency[i]) neighbor_sum += sigma[j];
        const double field = beta * neighbor_sum -
                             repulsion * (magnetization - sigma[i] - neighbor_sum);
        const double to_opposite = 1.0 / (1.0 + std::exp(2.0 * field * sigma[i]));
        const double back = 1.0 / (1.0 + std::exp(-2.0 * field * sigma[i]));
        const double forward_flow = table.prob(c) * to_opposite;
        const double backward_flow = table.prob(c ^ (1u << i)) * back;
        worst_db = std::max(worst_db, std::abs(forward_flow - backward_flow) /
                                          std::max(forward_flow, backward_flow));
      }
    }
  }

  Outcome outcome;
  outcome.pass = max_tv <= 0.02 && worst_db < 1e-10;
  outcome.detail = "max TV " + fmt(max_tv) + " (<= 0.02) over 20 graphs at n=8, " +
                   "schedule burn_in=600 thinning=5; detailed-balance residual " +
                   fmt(worst_db) + " (< 1e-10)";
  return outcome;
}

// --- criterion 2: threshold algebra ------------------------------------------

Outcome threshold_algebra() {
  Rng rng = make_rng(20901);
  std::uniform_real_distribution<double> b_dist(0.05, 20.0);
  std::uniform_real_distribution<double> gap_dist(std::sqrt(2.0) + 0.0101,
                                                  std::sqrt(2.0) + 3.0);
  double worst_root = 0.0, worst_gap = 0.0;
  bool ordering = true, equivalence = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const double b = b_dist(rng);
    const double root_a = std::sqrt(b) + gap_dist(rng);
    const double a = root_a * root_a;
    const double star = beta_star(a, b);
    worst_root = std::max(worst_root, std::abs(g(a, b, star)));
    worst_gap = std::max(worst_gap, std::abs(star - beta_star_bisection(a, b)));
    const double knee = 0.25 * std::log(a / b);
    ordering = ordering && star < knee && knee < beta_prime(a, b);

    if (trial < 100) {
      std::uniform_real_distribution<double> beta_dist(star / 30.0, 2.0 * star);
      double beta = beta_dist(rng);
      while (beta_ratio_is_integer(a, b, beta)) beta = beta_dist(rng);
      const int threshold = m_star(a, b, beta);
      for (int m = 1; m <= 50; ++m) {
        const bool by_m = m >= threshold;
        const bool by_beta = std::floor((m + 1) / 2.0) * beta > star;
        equivalence = equivalence && by_m == by_beta;
      }
    }
  }
  Outcome outcome;
  outcome.pass = worst_root < 1e-10 && worst_gap < 1e-10 && ordering && equivalence;
  outcome.detail = "1000 tuples: max |g(beta*)| " + fmt(worst_root) +
                   ", max closed-form vs bisection gap " + fmt(worst_gap) +
                   ", ordering " + (ordering ? "ok" : "BROKEN") +
                   ", m-threshold equivalence " + (equivalence ? "ok" : "BROKEN");
  return outcome;
}

// --- criterion 3: flip symmetry ----------------------------------------------

Outcome flip_symmetry() {
  Rng rng = make_rng(30901);
  bool table_exact = true;
  for (int n : {4, 6, 8, 10}) {
    const auto [p, q] = clamped_edge_rates(n, 9, 1);
    const Partition partition = random_balanced_partition(n, rng);
    const LabeledGraph graph = sample_graph(partition, p, q, rng);
    const GibbsTable table = enumerate_gibbs(graph, 2.0, 0.3);
    const std::uint32_t mask = (1u << n) - 1;
    for (std::uint32_t c = 0; c <= mask; ++c) {
      if (table.log_weights[c] != table.log_weights[c ^ mask]) table_exact = false;
    }
  }

  int checked = 0;
  bool equivariant = true;
  std::uniform_int_distribution<int> bit(0, 1);
  while (checked < 100) {
    const int n = 8 + 2 * (checked % 5);
    const int m = 2 + checked % 4;
    SampleSet set;
    for (int j = 0; j < m; ++j) {
      SpinSample sample;
      for (int i = 0; i < n; ++i) sample.spins.push_back(bit(rng) ? 1 : -1);
      set.samples.push_back(std::move(sample));
    }
    bool tie = false;
    for (int j = 1; j < m; ++j) {
      long long inner = 0;
      for (int i = 0; i < n; ++i) {
        inner += static_cast<int>(set.samples[0].spins[i]) * set.samples[j].spins[i];
      }
      if (inner == 0) tie = true;
    }
    if (tie) continue;  // aligning flips only on strict negativity
    SampleSet flipped = set;
    for (auto& s : flipped.samples[0].spins) s = -s;
    const std::uint64_t tie_seed = rng();
    Rng rng_a = make_rng(tie_seed);
    Rng rng_b = make_rng(tie_seed);
    const SpinSample out = learn_sibm(set, rng_a);
    const SpinSample out_flipped = learn_sibm(flipped, rng_b);
    for (int i = 0; i < n; ++i) {
      if (out_flipped.spins[i] != -out.spins[i]) equivariant = false;
    }
    ++checked;
  }

  Outcome outcome;
  outcome.pass = table_exact && equivariant;
  outcome.detail = std::string("table P(s)=P(-s) exact at n in {4,6,8,10}: ") +
                   (table_exact ? "yes" : "NO") +
                   "; learn_sibm equivariance on 100 sample sets: " +
                   (equivariant ? "yes" : "NO");
  return outcome;
}

// --- criterion 4: sigma = +-X regime -----------------------------------------

Outcome pm_x_regime() {
  // m=1, so recovery success is exactly the event {sigma = +-X}.
  ExperimentConfig config = config_from(
      "mode = success_curve\nn = 1000\na = 25\nb = 4\nalpha = 2\nbeta = 0.2\nm = 1\n"
      "trials = 200\nseed = 48101\n");
  const ExperimentResult result = run_success_curve(config);
  const double rate = result.rates.at(0);
  Outcome outcome;
  outcome.pass = rate >= 0.9;
  outcome.detail = "fraction of 200 trials with sigma exactly +-X: " + fmt(rate) +
                   " (>= 0.9) at beta=0.2 > beta*=" + fmt(beta_star(25, 4)) +
                   ", default schedule";
  return outcome;
}

// --- criterion 5: sample-complexity separation --------------------------------

Outcome sample_complexity() {
  ExperimentConfig config = config_from(
      "mode = success_curve\nn = 2000\na = 25\nb = 4\nalpha = 2\nbeta = 0.03\nm = 1\n"
      "sweep = m\nsweep_values = 1,3,5\ntrials = 200\nseed = 52501\n");
  const ExperimentResult result = run_success_curve(config);
  const double rate1 = result.rates.at(0);
  const double rate3 = result.rates.at(1);
  const double rate5 = result.rates.at(2);
  Outcome outcome;
  outcome.pass = rate3 - rate1 >= 0.5 && rate5 >= rate3 - 0.05;
  outcome.detail = "m*=" + std::to_string(m_star(25, 4, 0.03)) + "; rates m=1: " +
                   fmt(rate1) + ", m=3: " + fmt(rate3) + ", m=5: " + fmt(rate5) +
                   " (need rate3-rate1 >= 0.5, rate5 >= rate3-0.05), default schedule";
  return outcome;
}

// --- criterion 6: distance scaling --------------------------------------------

Outcome distance_scaling() {
  ExperimentConfig config = config_from(
      "mode = distance_scaling\nn = 0\na = 25\nb = 4\nalpha = 2\nbeta = 0.03\nm = 1\n"
      "sweep = n\nsweep_values = 500,1000,2000,4000\ntrials = 60\nseed = 60301\n");
  const ExperimentResult result = run_distance_scaling(config);
  const double g_beta = result.g_beta;  // recomputed by the theory module
  const double slope = result.slope;
  Outcome outcome;
  outcome.pass = std::abs(slope - g_beta) <= 0.15;
  std::string means;
  for (std::size_t i = 0; i < result.means.size(); ++i) {
    if (i > 0) means += '/';
    means += fmt(result.means[i]);
  }
  outcome.detail = "log-log slope " + fmt(slope) + " vs g(beta) " + fmt(g_beta) +
                   " (band +-0.15); mean dist_pm " + means + " over n=500..4000, " +
                   "60 trials per point";
  return outcome;
}

// --- criterion 7: concentration ------------------------------------------------

Outcome concentration() {
  ExperimentConfig config = config_from(
      "mode = concentration\nn = 4000\na = 25\nb = 4\nalpha = 2\nbeta = 0.03\nm = 1\n"
      "trials = 100\nseed = 70401\nband = 0.5,2\n");
  const ExperimentResult result = run_concentration(config);
  double worst_identity = 0.0;
  for (const auto& record : result.trials) {
    worst_identity = std::max(
        worst_identity, std::abs(record.exp_sum - record.statistic_alt) /
                            std::max(1.0, std::abs(record.exp_sum)));
  }
  Outcome outcome;
  outcome.pass = result.fraction_in_band >= 0.9 && worst_identity <= 1e-9;
  outcome.detail = "fraction of 100 ratios in [0.5, 2]: " +
                   fmt(result.fraction_in_band) +
                   " (>= 0.9); histogram-route identity residual " +
                   fmt(worst_identity);
  return outcome;
}

// --- criterion 8: alpha < b*beta regime -----------------------------------------

Outcome ones_regime() {
  // Annealed burn-in: a hot start can fall into the metastable +-X basin in
  // this regime, so the schedule ramps the temperature over the first half
  // of burn-in before equilibrating at the target measure.
  ExperimentConfig config = config_from(
      "mode = ones_regime\nn = 1000\na = 9\nb = 1\nalpha = 0.05\nbeta = 0.2\nm = 3\n"
      "trials = 100\nseed = 81201\nanneal = 0.5\n");
  const ExperimentResult result = run_ones_regime(config);
  Outcome outcome;
  outcome.pass = result.mean_statistic <= 0.1 && result.success_rate <= 0.1;
  outcome.detail = "mean dist_pm(sigma, +-1_n)/n over 100 trials: " +
                   fmt(result.mean_statistic) + " (<= 0.1); learn_sibm success rate " +
                   fmt(result.success_rate) +
                   " (<= 0.1); schedule burn_in=1400 anneal=0.5";
  return outcome;
}

// --- criterion 9: converse oracle ------------------------------------------------

Outcome converse_oracle() {
  // Engineered indistinguishable pairs at n=6.
  SibmParams params;
  params.n = 6;
  params.a = 3;
  params.b = 0.05;
  params.alpha = 1;
  params.beta = 0.4;
  params.m = 2;
  double worst_pair_gap = 0.0;
  Rng rng = make_rng(90901);
  std::uniform_int_distribution<int> bit(0, 1);
  int engineered = 0;
  while (engineered < 10) {
    Partition x = random_balanced_partition(6, rng);
    // Base sample: X with one -1 vertex turned +1, so that vertex and some
    // +1 vertex carry identical columns while their true labels differ.
    int minus = -1;
    for (int i = 0; i < 6; ++i) {
      if (x.labels[i] < 0 && minus < 0) minus = i;
    }
    std::vector<Spin> base = x.labels;
    base[minus] = 1;
    std::vector<Spin> noisy = base;
    for (int i = 0; i < 6; ++i) {
      if (bit(rng)) noisy[i] = -noisy[i];
    }
    SampleSet set;
    set.samples.push_back(SpinSample{base});
    set.samples.push_back(SpinSample{noisy});
    const auto pairs = indistinguishable_pairs(set, x);
    if (pairs.empty()) continue;
    ++engineered;

    const PosteriorResult posterior = exact_posterior(set, params);
    const auto find_mass = [&](const std::vector<Spin>& labels) {
      const auto it =
          std::find(posterior.support.begin(), posterior.support.end(), labels);
      return posterior.probability[it - posterior.support.begin()];
    };
    const double mass_x = find_mass(x.labels);
    for (const auto& [i, j] : pairs) {
      std::vector<Spin> swapped = x.labels;
      swapped[i] = -swapped[i];
      swapped[j] = -swapped[j];
      worst_pair_gap = std::max(worst_pair_gap, std::abs(mass_x - find_mass(swapped)));
    }
  }

  // 50 random small instances: posterior must normalize.
  double worst_norm = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial % 2 == 0 ? 4 : 6;
    SibmParams instance = params;
    instance.n = n;
    std::uniform_real_distribution<double> beta_dist(0.1, 0.6);
    instance.beta = beta_dist(rng);
    instance.m = 1 + trial % 3;
    const auto [p, q] = clamped_edge_rates(n, instance.a, instance.b);
    const Partition partition = random_balanced_partition(n, rng);
    const LabeledGraph graph = sample_graph(partition, p, q, rng);
    const GibbsTable table = enumerate_gibbs(graph, instance.alpha, instance.beta);
    SampleSet set;
    for (int j = 0; j < instance.m; ++j) set.samples.push_back(exact_sample(table, rng));
    const PosteriorResult posterior = exact_posterior(set, instance);
    const double total =
        std::accumulate(posterior.probability.begin(), posterior.probability.end(), 0.0);
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
  }

  Outcome outcome;
  outcome.pass = worst_pair_gap <= 1e-12 && worst_norm <= 1e-10;
  outcome.detail = "max posterior gap across indistinguishable pairs " +
                   fmt(worst_pair_gap) + " (<= 1e-12) over 10 engineered sets; max |1 - " +
                   "sum posterior| " + fmt(worst_norm) + " (<= 1e-10) over 50 instances";
  return outcome;
}

// --- criterion 10: determinism and performance -----------------------------------

Outcome determinism_performance() {
  const std::string text =
      "mode = success_curve\nn = 100\na = 9\nb = 1\nalpha = 2\nbeta = 0.25\nm = 3\n"
      "sweep = m\nsweep_values = 1,3\ntrials = 8\nseed = 3737\nburn_in = 100\n";
  ExperimentConfig config = config_from(text);
  config.workers = 1;
  const std::string csv_once = run_experiment(config).csv;
  const std::string csv_again = run_experiment(config).csv;
  config.workers = worker_count();
  const std::string csv_threaded = run_experiment(config).csv;
  const bool deterministic = csv_once == csv_again && csv_once == csv_threaded;

  // learn_sibm at n = 1e6, m = 5 in at most one second.
  Rng rng = make_rng(101010);
  SampleSet big;
  std::uniform_int_distribution<int> bit(0, 1);
  for (int j = 0; j < 5; ++j) {
    SpinSample sample;
    sample.spins.resize(1000000);
    for (auto& s : sample.spins) s = bit(rng) ? 1 : -1;
    big.samples.push_back(std::move(sample));
  }
  const auto start = std::chrono::steady_clock::now();
  const SpinSample estimate = learn_sibm(big, rng);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool fast = seconds <= 1.0 && estimate.n() == 1000000;

  // O(n m) contract: the time-vs-n slope stays near linear.
  std::vector<double> log_n, log_t;
  for (int n : {10000, 100000, 1000000}) {
    SampleSet set;
    for (int j = 0; j < 5; ++j) {
      SpinSample sample;
      sample.spins.resize(n);
      for (auto& s : sample.spins) s = bit(rng) ? 1 : -1;
      set.samples.push_back(std::move(sample));
    }
    // Repeat to keep small-n timings measurable.
    const int reps = 3000000 / n;
    const auto tick = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
      volatile int sink = learn_sibm(set, rng).spins[0];
      (void)sink;
    }
    const double per_run =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tick).count() /
        reps;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(per_run));
  }
  const double dx = log_n.back() - log_n.front();
  const double slope = (log_t.back() - log_t.front()) / dx;
  const bool linear = slope <= 1.3;

  Outcome outcome;
  outcome.pass = deterministic && fast && linear;
  outcome.detail = std::string("byte-identical CSVs (rerun + threaded): ") +
                   (deterministic ? "yes" : "NO") + "; learn_sibm n=1e6 m=5 in " +
                   fmt(seconds) + " s (<= 1); time slope vs n " + fmt(slope) +
                   " (<= 1.3)";
  return outcome;
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {1, "sampler exactness", sampler_exactness},
      {2, "threshold algebra", threshold_algebra},
      {3, "flip symmetry", flip_symmetry},
      {4, "sigma=+-X regime", pm_x_regime},
      {5, "sample-complexity separation", sample_complexity},
      {6, "distance scaling", distance_scaling},
      {7, "exp-sum concentration", concentration},
      {8, "alpha<b*beta regime", ones_regime},
      {9, "converse oracle", converse_oracle},
      {10, "determinism & performance", determinism_performance},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& entry : criteria) {
    if (!selected.empty() && !selected.count(entry.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d [%-29s] %s  (%.1fs)  %s\n", entry.id, entry.name,
                outcome.pass ? "PASS" : "FAIL", seconds, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures;
}
