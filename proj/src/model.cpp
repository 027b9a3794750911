#include "sibm/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sibm {

SibmParams validate_params(SibmParams params) {
  if (params.n < 4 || params.n % 2 != 0) {
    throw std::invalid_argument("n must be an even integer >= 4, got " +
                                std::to_string(params.n));
  }
  if (!(params.a > 0.0) || !(params.b > 0.0)) {
    throw std::invalid_argument("a and b must be positive");
  }
  if (!(params.a > params.b)) {
    throw std::invalid_argument("a must exceed b");
  }
  if (!(params.alpha > 0.0)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (!(params.beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (params.m < 1) {
    throw std::invalid_argument("m must be >= 1");
  }
  const double scale = std::log(static_cast<double>(params.n)) / params.n;
  params.p = params.a * scale;
  params.q = params.b * scale;
  if (params.p > 1.0) {
    throw std::invalid_argument("p = a*ln(n)/n = " + std::to_string(params.p) +
                                " exceeds 1 (n too small for given a)");
  }
  if (params.q > 1.0) {
    throw std::invalid_argument("q = b*ln(n)/n exceeds 1 (n too small for given b)");
  }
  return params;
}

std::pair<double, double> clamped_edge_rates(int n, double a, double b) {
  const double scale = std::log(static_cast<double>(n)) / n;
  return {std::min(1.0, a * scale), std::min(1.0, b * scale)};
}

std::size_t LabeledGraph::edge_count() const {
  std::size_t degree_sum = 0;
  for (const auto& nbrs : adjacency) degree_sum += nbrs.size();
  return degree_sum / 2;
}

void check_partition(const Partition& partition) {
  long long sum = 0;
  for (Spin s : partition.labels) {
    if (s != 1 && s != -1) throw std::invalid_argument("labels must be +-1");
    sum += s;
  }
  if (sum != 0) throw std::invalid_argument("partition is not balanced");
}

void check_graph(const LabeledGraph& graph) {
  check_partition(graph.partition);
  const int n = graph.n();
  if (static_cast<int>(graph.adjacency.size()) != n) {
    throw std::invalid_argument("adjacency size does not match label count");
  }
  for (int i = 0; i < n; ++i) {
    const auto& nbrs = graph.adjacency[i];
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const std::int32_t j = nbrs[k];
      if (j < 0 || j >= n) throw std::invalid_argument("neighbor out of range");
      if (j == i) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
      if (k > 0 && nbrs[k - 1] >= j) {
        throw std::invalid_argument("neighbor list not strictly sorted at vertex " +
                                    std::to_string(i));
      }
      const auto& back = graph.adjacency[j];
      if (!std::binary_search(back.begin(), back.end(), i)) {
        throw std::invalid_argument("edge not symmetric: " + std::to_string(i) + "-" +
                                    std::to_string(j));
      }
    }
  }
}

void check_sample_set(const SampleSet& set) {
  if (set.samples.empty()) throw std::invalid_argument("empty sample set");
  const int n = set.n();
  for (const auto& sample : set.samples) {
    if (sample.n() != n) throw std::invalid_argument("samples have mixed lengths");
    for (Spin s : sample.spins) {
      if (s != 1 && s != -1) throw std::invalid_argument("spins must be +-1");
    }
  }
}

void write_graph(const LabeledGraph& graph, std::ostream& out) {
  const int n = graph.n();
  out << "n " << n << "\n";
  out << "labels";
  for (Spin s : graph.partition.labels) out << ' ' << static_cast<int>(s);
  out << "\n";
  for (int i = 0; i < n; ++i) {
    for (std::int32_t j : graph.adjacency[i]) {
      if (j > i) out << "edge " << i << ' ' << j << "\n";
    }
  }
}

LabeledGraph read_graph(std::istream& in) {
  LabeledGraph graph;
  std::string keyword;
  int n = 0;
  if (!(in >> keyword) || keyword != "n" || !(in >> n) || n <= 0) {
    throw std::invalid_argument("graph file: expected 'n <count>' header");
  }
  if (!(in >> keyword) || keyword != "labels") {
    throw std::invalid_argument("graph file: expected 'labels' line");
  }
  graph.partition.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    int v = 0;
    if (!(in >> v) || (v != 1 && v != -1)) {
      throw std::invalid_argument("graph file: bad label token");
    }
    graph.partition.labels[i] = static_cast<Spin>(v);
  }
  graph.adjacency.assign(n, {});
  while (in >> keyword) {
    if (keyword != "edge") throw std::invalid_argument("graph file: unexpected token '" + keyword + "'");
    int i = 0, j = 0;
    if (!(in >> i >> j) || i < 0 || j <= i || j >= n) {
      throw std::invalid_argument("graph file: bad edge line");
    }
    graph.adjacency[i].push_back(j);
    graph.adjacency[j].push_back(i);
  }
  for (auto& nbrs : graph.adjacency) std::sort(nbrs.begin(), nbrs.end());
  check_graph(graph);
  return graph;
}

void write_samples(const SampleSet& set, std::ostream& out) {
  for (const auto& sample : set.samples) {
    for (int i = 0; i < sample.n(); ++i) {
      if (i > 0) out << ' ';
      out << static_cast<int>(sample.spins[i]);
    }
    out << "\n";
  }
}

SampleSet read_samples(std::istream& in) {
  SampleSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream tokens(line);
    SpinSample sample;
    int v = 0;
    while (tokens >> v) {
      if (v != 1 && v != -1) throw std::invalid_argument("sample file: bad spin token");
      sample.spins.push_back(static_cast<Spin>(v));
    }
    if (!tokens.eof()) throw std::invalid_argument("sample file: bad spin token");
    set.samples.push_back(std::move(sample));
  }
  check_sample_set(set);
  return set;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_graph_file(const LabeledGraph& graph, const std::string& path) {
  auto out = open_out(path);
  write_graph(graph, out);
}

LabeledGraph read_graph_file(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_samples_file(const SampleSet& set, const std::string& path) {
  auto out = open_out(path);
  write_samples(set, out);
}

SampleSet read_samples_file(const std::string& path) {
  auto in = open_in(path);
  return read_samples(in);
}

}  // namespace sibm
