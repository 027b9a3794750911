#pragma once

#include <utility>

#include "sibm/model.hpp"
#include "sibm/rng.hpp"

namespace sibm {

// The O(n*m) recovery algorithm: sign-align every sample to the first
// (flip sample j iff its inner product with sample 1 is strictly negative),
// then take a coordinate-wise majority vote. A zero column sum gets a fair
// random sign. Requires no knowledge of the model parameters.
SpinSample learn_sibm(const SampleSet& set, Rng& rng);

// Exact recovery up to a global sign.
bool recovery_success(const std::vector<Spin>& x_hat, const std::vector<Spin>& x);

// All pairs (i, i') with identical sample columns and opposite ground-truth
// labels; no decoder can tell X from X with the pair's labels swapped.
std::vector<std::pair<int, int>> indistinguishable_pairs(const SampleSet& set,
                                                         const Partition& x);

// Largest n for which the posterior is computed exactly (sums over all
// 2^{n(n-1)/2} graphs and all balanced partitions).
inline constexpr int kPosteriorCutoff = 6;

struct PosteriorResult {
  // All balanced +-1 label vectors of length n, ordered by their bit
  // encoding (bit i set = +1), with the exact posterior mass of each.
  std::vector<std::vector<Spin>> support;
  std::vector<double> probability;
  std::size_t argmax = 0;
};

// P(X = x | samples) over balanced partitions, marginalizing the hidden
// graph exactly:  posterior(x) ∝ sum_G P(G | x) * prod_j P(sigma_j | G).
// Edge rates are a*ln(n)/n and b*ln(n)/n clamped into [0,1] (toy-scale n
// admits surrogate rates above 1). Throws above the cutoff.
PosteriorResult exact_posterior(const SampleSet& set, const SibmParams& params);

}  // namespace sibm
