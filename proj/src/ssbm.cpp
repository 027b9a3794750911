#include "sibm/ssbm.hpp"

#include <algorithm>
#include <stdexcept>

namespace sibm {

Partition random_balanced_partition(int n, Rng& rng) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("partition size must be a positive even integer");
  }
  Partition partition;
  partition.labels.assign(n, Spin{1});
  std::fill(partition.labels.begin() + n / 2, partition.labels.end(), Spin{-1});
  std::shuffle(partition.labels.begin(), partition.labels.end(), rng);
  return partition;
}

LabeledGraph sample_graph(const Partition& partition, double within_p, double cross_q,
                          Rng& rng) {
  if (!(within_p >= 0.0 && within_p <= 1.0 && cross_q >= 0.0 && cross_q <= 1.0)) {
    throw std::invalid_argument("edge rates must lie in [0,1]");
  }
  check_partition(partition);
  const int n = partition.n();
  LabeledGraph graph;
  graph.partition = partition;
  graph.adjacency.assign(n, {});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double rate =
          partition.labels[i] == partition.labels[j] ? within_p : cross_q;
      if (unit(rng) < rate) {
        // Ascending scan order keeps every neighbor list sorted.
        graph.adjacency[i].push_back(j);
        graph.adjacency[j].push_back(i);
      }
    }
  }
  return graph;
}

LabeledGraph generate_ssbm(const SibmParams& params, Rng& rng) {
  const SibmParams valid = validate_params(params);
  Partition partition = random_balanced_partition(valid.n, rng);
  return sample_graph(partition, valid.p, valid.q, rng);
}

}  // namespace sibm
