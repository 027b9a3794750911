#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sibm/ising.hpp"
#include "sibm/model.hpp"
#include "sibm/recover.hpp"
#include "sibm/rng.hpp"
#include "sibm/ssbm.hpp"
#include "sibm/stats.hpp"
#include "sibm/theory.hpp"

namespace py = pybind11;
using namespace sibm;

namespace {

std::vector<Spin> to_spins(const std::vector<int>& values) {
  std::vector<Spin> spins(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) spins[i] = static_cast<Spin>(values[i]);
  return spins;
}

std::vector<int> from_spins(const std::vector<Spin>& spins) {
  return std::vector<int>(spins.begin(), spins.end());
}

SampleSet set_from_rows(const std::vector<std::vector<int>>& rows) {
  SampleSet set;
  for (const auto& row : rows) set.samples.push_back(SpinSample{to_spins(row)});
  check_sample_set(set);
  return set;
}

std::vector<std::vector<int>> rows_from_set(const SampleSet& set) {
  std::vector<std::vector<int>> rows;
  for (const auto& sample : set.samples) rows.push_back(from_spins(sample.spins));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_sibm, m) {
  m.doc() = "stochastic Ising block model laboratory";

  py::class_<SibmParams>(m, "SibmParams")
      .def(py::init([](int n, double a, double b, double alpha, double beta, int mm) {
             SibmParams params;
             params.n = n;
             params.a = a;
             params.b = b;
             params.alpha = alpha;
             params.beta = beta;
             params.m = mm;
             return validate_params(params);
           }),
           py::arg("n"), py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"),
           py::arg("m") = 1)
      .def_readonly("n", &SibmParams::n)
      .def_readonly("a", &SibmParams::a)
      .def_readonly("b", &SibmParams::b)
      .def_readonly("alpha", &SibmParams::alpha)
      .def_readonly("beta", &SibmParams::beta)
      .def_readonly("m", &SibmParams::m)
      .def_readonly("p", &SibmParams::p)
      .def_readonly("q", &SibmParams::q);

  py::class_<LabeledGraph>(m, "LabeledGraph")
      .def_property_readonly(
          "labels", [](const LabeledGraph& g) { return from_spins(g.partition.labels); })
      .def_property_readonly("adjacency",
                             [](const LabeledGraph& g) { return g.adjacency; })
      .def_property_readonly("n", [](const LabeledGraph& g) { return g.n(); })
      .def_property_readonly("edge_count",
                             [](const LabeledGraph& g) { return g.edge_count(); })
      .def("edges", [](const LabeledGraph& g) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < g.n(); ++i) {
          for (std::int32_t j : g.adjacency[i]) {
            if (j > i) edges.emplace_back(i, j);
          }
        }
        return edges;
      });

  py::class_<GibbsTable>(m, "GibbsTable")
      .def_readonly("n", &GibbsTable::n)
      .def_readonly("log_z", &GibbsTable::log_z)
      .def_readonly("log_weights", &GibbsTable::log_weights)
      .def("prob", &GibbsTable::prob, py::arg("config"));

  py::class_<ThresholdReport>(m, "ThresholdReport")
      .def_readonly("beta_star", &ThresholdReport::beta_star)
      .def_readonly("beta_prime", &ThresholdReport::beta_prime)
      .def_readonly("m_star", &ThresholdReport::m_star)
      .def_readonly("g", &ThresholdReport::g_at_beta)
      .def_readonly("g_tilde", &ThresholdReport::g_tilde_at_beta)
      .def_readonly("t_star", &ThresholdReport::t_star_at_beta)
      .def_readonly("graph_recoverable", &ThresholdReport::graph_recoverable)
      .def_readonly("threshold_defined", &ThresholdReport::threshold_defined)
      .def_readonly("beta_ratio_integer", &ThresholdReport::beta_ratio_integer)
      .def_property_readonly("alpha_regime", [](const ThresholdReport& r) {
        return std::string(to_string(r.alpha_regime));
      });

  m.def(
      "random_balanced_partition",
      [](int n, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return from_spins(random_balanced_partition(n, rng).labels);
      },
      py::arg("n"), py::arg("seed") = 0);

  m.def(
      "generate_ssbm",
      [](const SibmParams& params, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return generate_ssbm(params, rng);
      },
      py::arg("params"), py::arg("seed") = 0);

  m.def(
      "sample_graph",
      [](const std::vector<int>& labels, double p, double q, std::uint64_t seed) {
        Partition partition{to_spins(labels)};
        Rng rng = make_rng(seed);
        return sample_graph(partition, p, q, rng);
      },
      py::arg("labels"), py::arg("p"), py::arg("q"), py::arg("seed") = 0);

  m.def(
      "log_weight",
      [](const LabeledGraph& graph, const std::vector<int>& spins, double alpha,
         double beta) { return log_weight(graph, to_spins(spins), alpha, beta); },
      py::arg("graph"), py::arg("spins"), py::arg("alpha"), py::arg("beta"));

  m.def("enumerate_gibbs", &enumerate_gibbs, py::arg("graph"), py::arg("alpha"),
        py::arg("beta"));

  m.def(
      "exact_samples",
      [](const GibbsTable& table, int count, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        std::vector<std::vector<int>> rows;
        for (int j = 0; j < count; ++j) rows.push_back(from_spins(exact_sample(table, rng).spins));
        return rows;
      },
      py::arg("table"), py::arg("count") = 1, py::arg("seed") = 0);

  m.def(
      "sample_set_mcmc",
      [](const LabeledGraph& graph, double alpha, double beta, int count,
         std::uint64_t seed, int burn_in, double anneal) {
        Schedule schedule;
        schedule.burn_in_sweeps = burn_in;
        schedule.anneal_fraction = anneal;
        Rng rng = make_rng(seed);
        return rows_from_set(sample_set_mcmc(graph, alpha, beta, count, schedule, rng));
      },
      py::arg("graph"), py::arg("alpha"), py::arg("beta"), py::arg("m") = 1,
      py::arg("seed") = 0, py::arg("burn_in") = 0, py::arg("anneal") = 0.0);

  m.def("g", &g, py::arg("a"), py::arg("b"), py::arg("beta"));
  m.def("g_tilde", &g_tilde, py::arg("a"), py::arg("b"), py::arg("beta"));
  m.def("beta_star", &beta_star, py::arg("a"), py::arg("b"));
  m.def("beta_prime", &beta_prime, py::arg("a"), py::arg("b"));
  m.def("m_star", &m_star, py::arg("a"), py::arg("b"), py::arg("beta"));
  m.def("f_beta", &f_beta, py::arg("a"), py::arg("b"), py::arg("beta"), py::arg("t"));
  m.def("t_star", &t_star, py::arg("a"), py::arg("b"), py::arg("beta"));
  m.def("threshold_report", &threshold_report, py::arg("params"));

  m.def("neighbor_counts", [](const LabeledGraph& graph) {
    const VertexCounts counts = neighbor_counts(graph);
    return std::make_pair(counts.a_counts, counts.b_counts);
  });
  m.def("exp_sum", &exp_sum, py::arg("graph"), py::arg("beta"));
  m.def(
      "d_histogram",
      [](const LabeledGraph& graph) {
        std::map<int, int> histogram = d_histogram(graph);
        return histogram;
      },
      py::arg("graph"));
  m.def(
      "dist",
      [](const std::vector<int>& sigma, const std::vector<int>& x) {
        return dist(to_spins(sigma), to_spins(x));
      },
      py::arg("sigma"), py::arg("x"));
  m.def(
      "dist_pm",
      [](const std::vector<int>& sigma, const std::vector<int>& x) {
        return dist_pm(to_spins(sigma), to_spins(x));
      },
      py::arg("sigma"), py::arg("x"));
  m.def(
      "align_sign",
      [](const std::vector<int>& reference, const std::vector<int>& other) {
        return align_sign(to_spins(reference), to_spins(other));
      },
      py::arg("reference"), py::arg("other"));

  m.def(
      "learn_sibm",
      [](const std::vector<std::vector<int>>& rows, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return from_spins(learn_sibm(set_from_rows(rows), rng).spins);
      },
      py::arg("samples"), py::arg("seed") = 0);
  m.def(
      "recovery_success",
      [](const std::vector<int>& x_hat, const std::vector<int>& x) {
        return recovery_success(to_spins(x_hat), to_spins(x));
      },
      py::arg("x_hat"), py::arg("x"));
  m.def(
      "indistinguishable_pairs",
      [](const std::vector<std::vector<int>>& rows, const std::vector<int>& labels) {
        return indistinguishable_pairs(set_from_rows(rows), Partition{to_spins(labels)});
      },
      py::arg("samples"), py::arg("labels"));
  m.def(
      "exact_posterior",
      [](const std::vector<std::vector<int>>& rows, double a, double b, double alpha,
         double beta) {
        const SampleSet set = set_from_rows(rows);
        SibmParams params;  // posterior accepts surrogate rates at toy n
        params.n = set.n();
        params.a = a;
        params.b = b;
        params.alpha = alpha;
        params.beta = beta;
        params.m = set.m();
        const PosteriorResult posterior = exact_posterior(set, params);
        std::vector<std::vector<int>> support;
        for (const auto& labels : posterior.support) support.push_back(from_spins(labels));
        return std::make_tuple(support, posterior.probability, posterior.argmax);
      },
      py::arg("samples"), py::arg("a"), py::arg("b"), py::arg("alpha"), py::arg("beta"));

  m.def("read_graph_file", &read_graph_file, py::arg("path"));
  m.def("write_graph_file", &write_graph_file, py::arg("graph"), py::arg("path"));
  m.def(
      "read_samples_file",
      [](const std::string& path) { return rows_from_set(read_samples_file(path)); },
      py::arg("path"));
  m.def(
      "write_samples_file",
      [](const std::vector<std::vector<int>>& rows, const std::string& path) {
        write_samples_file(set_from_rows(rows), path);
      },
      py::arg("samples"), py::arg("path"));
}
