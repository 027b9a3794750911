#pragma once

#include "sibm/model.hpp"
#include "sibm/rng.hpp"

namespace sibm {

// Uniform draw from the balanced partitions of [n] (n even, n >= 4, except
// that n = 2 is allowed for completeness). Fisher-Yates shuffle of a fixed
// half-and-half label multiset.
Partition random_balanced_partition(int n, Rng& rng);

// Bernoulli edge sampling over all n*(n-1)/2 pairs: rate within_p for
// same-label pairs, cross_q otherwise. Rates must lie in [0,1].
LabeledGraph sample_graph(const Partition& partition, double within_p, double cross_q,
                          Rng& rng);

// Draws (X, G): uniform balanced partition, then independent edges with
// p = a*ln(n)/n within and q = b*ln(n)/n across. Params must validate.
LabeledGraph generate_ssbm(const SibmParams& params, Rng& rng);

}  // namespace sibm
