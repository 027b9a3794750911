#pragma once

#include <map>

#include "sibm/model.hpp"

namespace sibm {

// Per-vertex neighbor counts split by label agreement with the ground
// truth: a_counts[i] = same-label neighbors of i, b_counts[i] = opposite.
// a_counts[i] + b_counts[i] = deg(i).
struct VertexCounts {
  std::vector<std::int32_t> a_counts;
  std::vector<std::int32_t> b_counts;
};

VertexCounts neighbor_counts(const LabeledGraph& graph);

// Sum over vertices of exp(2*beta*(B_i - A_i)), accumulated with the
// exponents shifted by their maximum.
double exp_sum(const LabeledGraph& graph, double beta);

// Histogram of the integer field imbalances B_i - A_i over all vertices.
std::map<int, int> d_histogram(const LabeledGraph& graph);

// Hamming distance, and distance to the closer of {x, -x}.
int dist(const std::vector<Spin>& sigma, const std::vector<Spin>& x);
int dist_pm(const std::vector<Spin>& sigma, const std::vector<Spin>& x);

// -1 iff the inner product <reference, other> is strictly negative, else +1
// (a zero inner product keeps the sample unflipped).
int align_sign(const std::vector<Spin>& reference, const std::vector<Spin>& other);

}  // namespace sibm
