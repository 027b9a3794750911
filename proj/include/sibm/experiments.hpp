#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sibm/ising.hpp"
#include "sibm/model.hpp"

namespace sibm {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value experiment description. Modes: success_curve,
// distance_scaling, concentration, ones_regime, sampler_validation.
// At most one sweep axis over {m, beta, n}; a fixed-parameter config is a
// single-point sweep.
struct ExperimentConfig {
  std::string mode;
  int n = 0;
  double a = 0.0, b = 0.0, alpha = 0.0, beta = 0.0;
  int m = 1;
  std::string sweep;                 // "", "m", "beta", "n"
  std::vector<double> sweep_values;
  int trials = 1;
  std::uint64_t seed = 0;
  Schedule schedule;
  long draws = 1000000;              // sampler_validation draw count
  double band_lo = 0.0, band_hi = 0.0;  // concentration ratio band
  double slope_tol = 0.15;           // distance_scaling acceptance half-width
  double ones_band = 0.1;            // ones_regime mean-distance band
  int workers = 1;
  std::string out;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

// One Monte Carlo trial's outcome. wall_time_ms is kept in memory only; the
// CSV must be byte-identical across runs with the same seed.
struct TrialRecord {
  int trial = 0;
  double swept_value = 0.0;
  bool success = false;
  std::vector<int> min_dist_pm;   // per sample
  double exp_sum = 0.0;           // concentration: direct value
  double statistic = 0.0;         // ratio / normalized distance / Glauber TV
  double statistic_alt = 0.0;     // exp_sum via histogram / exact-sampler TV
  double wall_time_ms = 0.0;
};

struct ExperimentResult {
  std::string csv;
  // Typed summaries, filled per mode.
  std::vector<double> sweep_values;
  std::vector<double> rates;      // success_curve: rate per point
  std::vector<double> stderrs;    // success_curve: error bar per point
  std::vector<double> means;      // distance_scaling: mean dist_pm per point
  double slope = 0.0;             // distance_scaling: fitted log-log slope
  double g_beta = 0.0;
  double fraction_in_band = 0.0;  // concentration
  double mean_statistic = 0.0;    // ones_regime: mean normalized distance
  double success_rate = 0.0;      // ones_regime
  std::vector<TrialRecord> trials;
};

// Per-mode runners; all throw ConfigError on regime/validation problems.
ExperimentResult run_success_curve(const ExperimentConfig& config);
ExperimentResult run_distance_scaling(const ExperimentConfig& config);
ExperimentResult run_concentration(const ExperimentConfig& config);
ExperimentResult run_ones_regime(const ExperimentConfig& config);
ExperimentResult run_sampler_validation(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

// Deterministic number formatting shared by all CSV writers.
std::string format_value(double v);

}  // namespace sibm
