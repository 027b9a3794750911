#include "sibm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sibm {

VertexCounts neighbor_counts(const LabeledGraph& graph) {
  const int n = graph.n();
  VertexCounts counts;
  counts.a_counts.assign(n, 0);
  counts.b_counts.assign(n, 0);
  const auto& labels = graph.partition.labels;
  for (int i = 0; i < n; ++i) {
    for (std::int32_t j : graph.adjacency[i]) {
      if (labels[j] == labels[i]) {
        ++counts.a_counts[i];
      } else {
        ++counts.b_counts[i];
      }
    }
  }
  return counts;
}

double exp_sum(const LabeledGraph& graph, double beta) {
  const VertexCounts counts = neighbor_counts(graph);
  const int n = graph.n();
  if (n == 0) return 0.0;
  double max_exponent = -std::numeric_limits<double>::infinity();
  std::vector<double> exponents(n);
  for (int i = 0; i < n; ++i) {
    exponents[i] = 2.0 * beta * (counts.b_counts[i] - counts.a_counts[i]);
    max_exponent = std::max(max_exponent, exponents[i]);
  }
  double shifted = 0.0;
  for (int i = 0; i < n; ++i) shifted += std::exp(exponents[i] - max_exponent);
  return std::exp(max_exponent) * shifted;
}

std::map<int, int> d_histogram(const LabeledGraph& graph) {
  const VertexCounts counts = neighbor_counts(graph);
  std::map<int, int> histogram;
  for (std::size_t i = 0; i < counts.a_counts.size(); ++i) {
    ++histogram[counts.b_counts[i] - counts.a_counts[i]];
  }
  return histogram;
}

int dist(const std::vector<Spin>& sigma, const std::vector<Spin>& x) {
  if (sigma.size() != x.size()) throw std::invalid_argument("dist: length mismatch");
  int mismatches = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] != x[i]) ++mismatches;
  }
  return mismatches;
}

int dist_pm(const std::vector<Spin>& sigma, const std::vector<Spin>& x) {
  const int d = dist(sigma, x);
  return std::min(d, static_cast<int>(sigma.size()) - d);
}

int align_sign(const std::vector<Spin>& reference, const std::vector<Spin>& other) {
  if (reference.size() != other.size()) {
    throw std::invalid_argument("align_sign: length mismatch");
  }
  long long inner = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    inner += static_cast<int>(reference[i]) * static_cast<int>(other[i]);
  }
  return inner < 0 ? -1 : 1;
}

}  // namespace sibm
