#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sibm {

// Spins and partition labels are +1/-1 throughout.
using Spin = std::int8_t;

// Parameters of one SIBM instance: a balanced two-community graph on n
// vertices with within-rate p = a*ln(n)/n and cross-rate q = b*ln(n)/n,
// an Ising measure with edge attraction beta and non-edge repulsion
// alpha*ln(n)/n, and m spin samples drawn from it.
struct SibmParams {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  int m = 1;
  // Derived edge rates, filled in by validate_params.
  double p = 0.0;
  double q = 0.0;
};

// Checks all SibmParams invariants (n even and >= 4, a > b > 0, alpha > 0,
// beta > 0, m >= 1, derived p and q inside [0,1]) and returns the params
// with p and q attached. Throws std::invalid_argument otherwise.
// Idempotent: validating an already validated value changes nothing.
SibmParams validate_params(SibmParams params);

// Edge rates clamped into [0,1]. Toy-scale paths (exact posterior, sampler
// validation at n <= 10) use parameter points where a*ln(n)/n exceeds 1;
// there the rate saturates instead of being rejected.
std::pair<double, double> clamped_edge_rates(int n, double a, double b);

struct Partition {
  std::vector<Spin> labels;  // balanced: sum of labels is 0

  int n() const { return static_cast<int>(labels.size()); }
};

// Undirected simple graph plus the ground-truth partition that generated it.
// Neighbor lists are sorted ascending; the structure is immutable once built.
struct LabeledGraph {
  Partition partition;
  std::vector<std::vector<std::int32_t>> adjacency;

  int n() const { return partition.n(); }
  std::size_t edge_count() const;
};

struct SpinSample {
  std::vector<Spin> spins;

  int n() const { return static_cast<int>(spins.size()); }
};

// m samples drawn for one fixed graph; all share a common length.
struct SampleSet {
  std::vector<SpinSample> samples;

  int m() const { return static_cast<int>(samples.size()); }
  int n() const { return samples.empty() ? 0 : samples.front().n(); }
};

// Invariant checks; throw std::invalid_argument on violation.
void check_partition(const Partition& partition);
void check_graph(const LabeledGraph& graph);
void check_sample_set(const SampleSet& set);

// Text graph format:
//   n <int>
//   labels <+-1 ... +-1>        (n tokens)
//   edge <i> <j>                (0-based, i < j, one line per edge)
// LF line endings, ASCII only. Round-trips bit-exactly.
void write_graph(const LabeledGraph& graph, std::ostream& out);
LabeledGraph read_graph(std::istream& in);
void write_graph_file(const LabeledGraph& graph, const std::string& path);
LabeledGraph read_graph_file(const std::string& path);

// Text sample format: one line per sample, n space-separated +-1 tokens.
void write_samples(const SampleSet& set, std::ostream& out);
SampleSet read_samples(std::istream& in);
void write_samples_file(const SampleSet& set, const std::string& path);
SampleSet read_samples_file(const std::string& path);

}  // namespace sibm
