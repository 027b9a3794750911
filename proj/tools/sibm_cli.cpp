#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sibm/experiments.hpp"
#include "sibm/ising.hpp"
#include "sibm/model.hpp"
#include "sibm/recover.hpp"
#include "sibm/rng.hpp"
#include "sibm/ssbm.hpp"
#include "sibm/stats.hpp"
#include "sibm/theory.hpp"

namespace {

using nlohmann::json;

json report_to_json(const sibm::ThresholdReport& report) {
  json j;
  j["graph_recoverable"] = report.graph_recoverable;
  j["threshold_defined"] = report.threshold_defined;
  j["alpha_regime"] = sibm::to_string(report.alpha_regime);
  j["g"] = report.g_at_beta;
  j["g_tilde"] = report.g_tilde_at_beta;
  j["t_star"] = report.t_star_at_beta;
  if (report.threshold_defined) {
    j["beta_star"] = report.beta_star;
    j["beta_prime"] = report.beta_prime;
    j["m_star"] = report.m_star;
    j["beta_ratio_integer"] = report.beta_ratio_integer;
    if (report.beta_ratio_integer) {
      j["open_window"] = {report.m_star - 2, report.m_star - 1};
    }
  } else {
    j["beta_star"] = nullptr;
    j["beta_prime"] = nullptr;
    j["m_star"] = nullptr;
  }
  return j;
}

int run_generate(int n, double a, double b, std::uint64_t seed, const std::string& out) {
  sibm::SibmParams params;
  params.n = n;
  params.a = a;
  params.b = b;
  params.alpha = 1.0;  // not used by generation, must only pass validation
  params.beta = 1.0;
  params.m = 1;
  sibm::Rng rng = sibm::make_rng(seed);
  const sibm::LabeledGraph graph = sibm::generate_ssbm(params, rng);
  sibm::write_graph_file(graph, out);
  std::cerr << "wrote graph n=" << n << " edges=" << graph.edge_count() << " to " << out
            << "\n";
  return 0;
}

int run_sample(const std::string& graph_path, double alpha, double beta, int m,
               int burn_in, double anneal, std::uint64_t seed, const std::string& out,
               bool exact) {
  const sibm::LabeledGraph graph = sibm::read_graph_file(graph_path);
  sibm::Rng rng = sibm::make_rng(seed);
  sibm::SampleSet set;
  if (exact) {
    const sibm::GibbsTable table = sibm::enumerate_gibbs(graph, alpha, beta);
    for (int j = 0; j < m; ++j) set.samples.push_back(sibm::exact_sample(table, rng));
  } else {
    sibm::Schedule schedule;
    schedule.burn_in_sweeps = burn_in;
    schedule.anneal_fraction = anneal;
    set = sibm::sample_set_mcmc(graph, alpha, beta, m, schedule, rng);
  }
  sibm::write_samples_file(set, out);
  std::cerr << "wrote " << m << " samples to " << out << "\n";
  return 0;
}

int run_threshold(int n, double a, double b, double alpha, double beta, int m) {
  sibm::SibmParams params;
  params.n = n;
  params.a = a;
  params.b = b;
  params.alpha = alpha;
  params.beta = beta;
  params.m = m;
  const sibm::ThresholdReport report = sibm::threshold_report(params);
  json j = report_to_json(report);
  j["a"] = a;
  j["b"] = b;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["m"] = m;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_stats(const std::string& graph_path, double beta) {
  const sibm::LabeledGraph graph = sibm::read_graph_file(graph_path);
  const sibm::VertexCounts counts = sibm::neighbor_counts(graph);
  json j;
  j["n"] = graph.n();
  j["beta"] = beta;
  j["a_counts"] = counts.a_counts;
  j["b_counts"] = counts.b_counts;
  j["exp_sum"] = sibm::exp_sum(graph, beta);
  json histogram = json::object();
  for (const auto& [imbalance, count] : sibm::d_histogram(graph)) {
    histogram[std::to_string(imbalance)] = count;
  }
  j["d_histogram"] = histogram;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_recover(const std::string& samples_path, std::uint64_t seed,
                const std::string& out) {
  const sibm::SampleSet set = sibm::read_samples_file(samples_path);
  sibm::Rng rng = sibm::make_rng(seed);
  const sibm::SpinSample estimate = sibm::learn_sibm(set, rng);
  sibm::SampleSet wrapper;
  wrapper.samples.push_back(estimate);
  sibm::write_samples_file(wrapper, out);
  std::cerr << "wrote label estimate to " << out << "\n";
  return 0;
}

int run_posterior(const std::string& samples_path, int n, double a, double b,
                  double alpha, double beta) {
  const sibm::SampleSet set = sibm::read_samples_file(samples_path);
  if (set.n() != n) {
    throw std::invalid_argument("--n does not match the sample file");
  }
  sibm::SibmParams params;
  params.n = n;
  params.a = a;
  params.b = b;
  params.alpha = alpha;
  params.beta = beta;
  params.m = set.m();
  const sibm::PosteriorResult posterior = sibm::exact_posterior(set, params);
  json j;
  j["n"] = n;
  j["m"] = set.m();
  json support = json::array();
  for (const auto& labels : posterior.support) {
    json row = json::array();
    for (sibm::Spin s : labels) row.push_back(static_cast<int>(s));
    support.push_back(row);
  }
  j["support"] = support;
  j["probability"] = posterior.probability;
  j["argmax"] = posterior.argmax;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_experiment_cmd(const std::string& config_path, std::uint64_t seed, bool seed_set,
                       const std::string& out, int workers) {
  sibm::ExperimentConfig config = sibm::load_config_file(config_path);
  if (seed_set) config.seed = seed;
  if (!out.empty()) config.out = out;
  if (workers > 0) config.workers = workers;
  if (config.out.empty()) throw sibm::ConfigError("no output path (--out or out=...)");
  const sibm::ExperimentResult result = sibm::run_experiment(config);
  std::ofstream file(config.out);
  if (!file) throw std::runtime_error("cannot open for writing: " + config.out);
  file << result.csv;
  std::cerr << "wrote " << config.mode << " results to " << config.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Ising block model laboratory"};
  app.require_subcommand(1);

  int n = 0, m = 1, burn_in = 0, workers = 0;
  double a = 0, b = 0, alpha = 0, beta = 0, anneal = 0;
  std::uint64_t seed = 0;
  std::string out, graph_path, samples_path, config_path;
  bool exact = false;

  auto* generate = app.add_subcommand("generate", "draw (X, G) from the SSBM");
  generate->add_option("--n", n, "vertex count (even)")->required();
  generate->add_option("--a", a, "within-cluster rate constant")->required();
  generate->add_option("--b", b, "cross-cluster rate constant")->required();
  generate->add_option("--seed", seed, "random seed");
  generate->add_option("--out", out, "graph file path")->required();

  auto* sample = app.add_subcommand("sample", "draw Ising samples on a graph");
  sample->add_option("--graph", graph_path, "graph file")->required();
  sample->add_option("--alpha", alpha, "non-edge repulsion coefficient")->required();
  sample->add_option("--beta", beta, "inverse temperature")->required();
  sample->add_option("--m", m, "number of samples")->required();
  sample->add_option("--burn-in", burn_in, "burn-in sweeps (0 = 200*ceil(ln n))");
  sample->add_option("--anneal", anneal, "anneal fraction of burn-in");
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--out", out, "sample file path")->required();
  sample->add_flag("--exact", exact, "exact enumeration sampler (small n only)");

  auto* threshold = app.add_subcommand("threshold", "threshold report as JSON");
  threshold->add_option("--a", a, "within-cluster rate constant")->required();
  threshold->add_option("--b", b, "cross-cluster rate constant")->required();
  threshold->add_option("--alpha", alpha, "non-edge repulsion coefficient")->required();
  threshold->add_option("--beta", beta, "inverse temperature")->required();
  threshold->add_option("--m", m, "sample count")->required();
  threshold->add_option("--n", n, "vertex count (validation only)")
      ->default_val(1000000);

  auto* stats = app.add_subcommand("stats", "per-vertex statistics as JSON");
  stats->add_option("--graph", graph_path, "graph file")->required();
  stats->add_option("--beta", beta, "inverse temperature")->required();

  auto* recover = app.add_subcommand("recover", "run the majority-vote decoder");
  recover->add_option("--samples", samples_path, "sample file")->required();
  recover->add_option("--seed", seed, "random seed (tie breaks)");
  recover->add_option("--out", out, "labels file path")->required();

  auto* posterior = app.add_subcommand("posterior", "exact posterior at toy n");
  posterior->add_option("--samples", samples_path, "sample file")->required();
  posterior->add_option("--n", n, "vertex count (<= 6)")->required();
  posterior->add_option("--a", a, "within-cluster rate constant")->required();
  posterior->add_option("--b", b, "cross-cluster rate constant")->required();
  posterior->add_option("--alpha", alpha, "non-edge repulsion coefficient")->required();
  posterior->add_option("--beta", beta, "inverse temperature")->required();

  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment");
  experiment->add_option("--config", config_path, "key=value config file")->required();
  auto* seed_opt = experiment->add_option("--seed", seed, "master seed override");
  experiment->add_option("--out", out, "CSV output path override");
  experiment->add_option("--workers", workers, "worker thread bound");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(n, a, b, seed, out);
    if (sample->parsed())
      return run_sample(graph_path, alpha, beta, m, burn_in, anneal, seed, out, exact);
    if (threshold->parsed()) return run_threshold(n, a, b, alpha, beta, m);
    if (stats->parsed()) return run_stats(graph_path, beta);
    if (recover->parsed()) return run_recover(samples_path, seed, out);
    if (posterior->parsed()) return run_posterior(samples_path, n, a, b, alpha, beta);
    if (experiment->parsed())
      return run_experiment_cmd(config_path, seed, !seed_opt->empty(), out, workers);
  } catch (const sibm::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return experiment->parsed() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
