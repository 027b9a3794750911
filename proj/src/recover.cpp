#include "sibm/recover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sibm/ising.hpp"
#include "sibm/stats.hpp"

namespace sibm {

SpinSample learn_sibm(const SampleSet& set, Rng& rng) {
  if (set.samples.empty()) throw std::invalid_argument("learn_sibm: empty sample set");
  const int n = set.n();
  const int m = set.m();
  const auto& reference = set.samples.front().spins;
  std::vector<std::int32_t> column_sum(n, 0);
  for (int j = 0; j < m; ++j) {
    const auto& spins = set.samples[j].spins;
    if (static_cast<int>(spins.size()) != n) {
      throw std::invalid_argument("learn_sibm: samples have mixed lengths");
    }
    const int sign = j == 0 ? 1 : align_sign(reference, spins);
    for (int i = 0; i < n; ++i) column_sum[i] += sign * spins[i];
  }
  SpinSample estimate;
  estimate.spins.resize(n);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int i = 0; i < n; ++i) {
    if (column_sum[i] > 0) {
      estimate.spins[i] = 1;
    } else if (column_sum[i] < 0) {
      estimate.spins[i] = -1;
    } else {
      // Fair tie sign drawn relative to the reference sample, so that a
      // global flip of sample 1 flips the output coordinate too.
      estimate.spins[i] = bit(rng) ? reference[i] : static_cast<Spin>(-reference[i]);
    }
  }
  return estimate;
}

bool recovery_success(const std::vector<Spin>& x_hat, const std::vector<Spin>& x) {
  if (x_hat.size() != x.size()) {
    throw std::invalid_argument("recovery_success: length mismatch");
  }
  const int d = dist(x_hat, x);
  return d == 0 || d == static_cast<int>(x.size());
}

std::vector<std::pair<int, int>> indistinguishable_pairs(const SampleSet& set,
                                                         const Partition& x) {
  check_sample_set(set);
  const int n = set.n();
  if (x.n() != n) throw std::invalid_argument("indistinguishable_pairs: length mismatch");
  const int m = set.m();
  // Bucket vertices by their sample column, then pair opposite labels.
  std::map<std::vector<Spin>, std::pair<std::vector<int>, std::vector<int>>> buckets;
  std::vector<Spin> column(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) column[j] = set.samples[j].spins[i];
    auto& bucket = buckets[column];
    (x.labels[i] > 0 ? bucket.first : bucket.second).push_back(i);
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [key, bucket] : buckets) {
    for (int i : bucket.first) {
      for (int j : bucket.second) {
        pairs.emplace_back(std::min(i, j), std::max(i, j));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

// Online log-sum-exp accumulator.
struct LogSum {
  double max_log = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;

  void add(double v) {
    if (v == -std::numeric_limits<double>::infinity()) return;
    if (v <= max_log) {
      scaled_sum += std::exp(v - max_log);
    } else {
      scaled_sum = scaled_sum * std::exp(max_log - v) + 1.0;
      max_log = v;
    }
  }

  double value() const {
    if (scaled_sum == 0.0) return -std::numeric_limits<double>::infinity();
    return max_log + std::log(scaled_sum);
  }
};

std::vector<std::vector<Spin>> balanced_support(int n) {
  std::vector<std::vector<Spin>> support;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != n / 2) continue;
    std::vector<Spin> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = (mask >> i) & 1u ? Spin{1} : Spin{-1};
    support.push_back(std::move(labels));
  }
  return support;
}

}  // namespace

PosteriorResult exact_posterior(const SampleSet& set, const SibmParams& params) {
  check_sample_set(set);
  const int n = set.n();
  if (n > kPosteriorCutoff || n < 2 || n % 2 != 0) {
    throw std::invalid_argument("exact_posterior: n must be even and <= " +
                                std::to_string(kPosteriorCutoff));
  }
  if (params.n != n) throw std::invalid_argument("exact_posterior: params.n mismatch");
  if (!(params.a > params.b) || !(params.b > 0.0) || !(params.alpha > 0.0) ||
      !(params.beta > 0.0)) {
    throw std::invalid_argument("exact_posterior: need a > b > 0, alpha > 0, beta > 0");
  }
  const auto [rate_in, rate_cross] = clamped_edge_rates(n, params.a, params.b);
  const int m = set.m();
  const double repulsion = params.alpha * std::log(static_cast<double>(n)) / n;

  // Pair table.
  const int num_pairs = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(num_pairs);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  // Spin products per configuration and pair; pair_sign[c][p] = s_i s_j.
  const std::uint32_t num_configs = 1u << n;
  std::vector<std::vector<std::int8_t>> pair_sign(num_configs,
                                                  std::vector<std::int8_t>(num_pairs));
  std::vector<int> all_pair_sum(num_configs, 0);
  for (std::uint32_t c = 0; c < num_configs; ++c) {
    for (int p = 0; p < num_pairs; ++p) {
      const int si = (c >> pairs[p].first) & 1u ? 1 : -1;
      const int sj = (c >> pairs[p].second) & 1u ? 1 : -1;
      pair_sign[c][p] = static_cast<std::int8_t>(si * sj);
      all_pair_sum[c] += si * sj;
    }
  }

  // Per-sample configuration indices.
  std::vector<std::uint32_t> sample_config(m);
  for (int j = 0; j < m; ++j) sample_config[j] = encode_spins(set.samples[j].spins);

  const auto support = balanced_support(n);
  const std::size_t num_x = support.size();

  // Per (partition, pair): log-rate contributions for edge present/absent,
  // with zero-probability outcomes tracked as impossibility flags.
  struct PairPrior {
    double log_edge = 0.0, log_gap = 0.0;
    bool edge_impossible = false, gap_impossible = false;
  };
  std::vector<std::vector<PairPrior>> prior(num_x, std::vector<PairPrior>(num_pairs));
  for (std::size_t xi = 0; xi < num_x; ++xi) {
    for (int p = 0; p < num_pairs; ++p) {
      const bool within = support[xi][pairs[p].first] == support[xi][pairs[p].second];
      const double rate = within ? rate_in : rate_cross;
      auto& entry = prior[xi][p];
      if (rate <= 0.0) {
        entry.edge_impossible = true;
      } else {
        entry.log_edge = std::log(rate);
      }
      if (rate >= 1.0) {
        entry.gap_impossible = true;
      } else {
        entry.log_gap = std::log1p(-rate);
      }
    }
  }

  // Walk all graphs in Gray-code order, keeping the integer edge pair-sums
  // exact under single-pair toggles.
  std::vector<int> edge_pair_sum(num_configs, 0);
  std::vector<bool> in_mask(num_pairs, false);
  std::vector<LogSum> posterior_mass(num_x);
  std::vector<double> log_weights(num_configs);
  const std::uint64_t num_masks = std::uint64_t{1} << num_pairs;
  for (std::uint64_t step = 0; step < num_masks; ++step) {
    if (step > 0) {
      const int p = std::countr_zero(step);
      const int direction = in_mask[p] ? -1 : 1;
      in_mask[p] = !in_mask[p];
      for (std::uint32_t c = 0; c < num_configs; ++c) {
        edge_pair_sum[c] += direction * pair_sign[c][p];
      }
    }
    // log Z for this graph.
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::uint32_t c = 0; c < num_configs; ++c) {
      const double lw = params.beta * edge_pair_sum[c] -
                        repulsion * (all_pair_sum[c] - edge_pair_sum[c]);
      log_weights[c] = lw;
      max_lw = std::max(max_lw, lw);
    }
    double z = 0.0;
    for (std::uint32_t c = 0; c < num_configs; ++c) z += std::exp(log_weights[c] - max_lw);
    const double log_z = max_lw + std::log(z);
    double sample_ll = 0.0;
    for (int j = 0; j < m; ++j) sample_ll += log_weights[sample_config[j]] - log_z;

    for (std::size_t xi = 0; xi < num_x; ++xi) {
      double log_pg = 0.0;
      bool impossible = false;
      for (int p = 0; p < num_pairs; ++p) {
        const auto& entry = prior[xi][p];
        if (in_mask[p]) {
          if (entry.edge_impossible) {
            impossible = true;
            break;
          }
          log_pg += entry.log_edge;
        } else {
          if (entry.gap_impossible) {
            impossible = true;
            break;
          }
          log_pg += entry.log_gap;
        }
      }
      if (!impossible) posterior_mass[xi].add(log_pg + sample_ll);
    }
  }

  PosteriorResult result;
  result.support = support;
  result.probability.resize(num_x);
  LogSum total;
  for (const auto& mass : posterior_mass) total.add(mass.value());
  const double log_total = total.value();
  double best = -1.0;
  for (std::size_t xi = 0; xi < num_x; ++xi) {
    result.probability[xi] = std::exp(posterior_mass[xi].value() - log_total);
    if (result.probability[xi] > best) {
      best = result.probability[xi];
      result.argmax = xi;
    }
  }
  return result;
}

}  // namespace sibm
