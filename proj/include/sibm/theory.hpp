#pragma once

#include "sibm/model.hpp"

namespace sibm {

// Closed-form threshold quantities for the two-community model with rates
// (a, b). All logarithms are natural.

// g(beta) = (b*e^{2 beta} + a*e^{-2 beta})/2 - (a+b)/2 + 1. Convex, g(0)=1,
// minimum at beta = ln(a/b)/4, roots beta_star < beta_prime when
// sqrt(a)-sqrt(b) > sqrt(2).
double g(double a, double b, double beta);

// g capped at its minimizing argument: g(beta) for beta < ln(a/b)/4, the
// constant sqrt(a*b) - (a+b)/2 + 1 beyond it.
double g_tilde(double a, double b, double beta);

// Critical inverse temperature: the smaller root of g, in closed form
//   beta_star = ln((a+b-2 - sqrt((a+b-2)^2 - 4ab)) / (2b)) / 2.
// Throws std::domain_error when sqrt(a)-sqrt(b) is below (or within 1e-9 of)
// sqrt(2), where the discriminant degenerates.
double beta_star(double a, double b);

// The larger root of g.
double beta_prime(double a, double b);

// beta_star recomputed by bisection on g over (0, ln(a/b)/4), tolerance
// 1e-12 on beta. Independent cross-check of the closed form.
double beta_star_bisection(double a, double b);

// Minimal sample count 2*floor(beta_star/beta) + 1 (always odd). A ratio
// within 1e-9 (relative) of an integer is snapped to it before the floor;
// see beta_ratio_is_integer.
int m_star(double a, double b, double beta);

// True when beta_star/beta is within 1e-9 (relative) of an integer; the
// recoverability of m in {m_star-2, m_star-1} is open in that case.
bool beta_ratio_is_integer(double a, double b, double beta);

// f_beta(t) = sqrt(t^2+ab) - t*(ln(sqrt(t^2+ab)+t) - ln b) - (a+b)/2 + 1
//           + 2*beta*t.
// Concave in t with global maximum g(beta) at t_star.
double f_beta(double a, double b, double beta, double t);

// Maximizer of f_beta: (b*e^{2 beta} - a*e^{-2 beta}) / 2.
double t_star(double a, double b, double beta);

enum class AlphaRegime { above, below, boundary };

const char* to_string(AlphaRegime regime);

struct ThresholdReport {
  double beta_star = 0.0;
  double beta_prime = 0.0;
  int m_star = 0;
  double g_at_beta = 0.0;
  double g_tilde_at_beta = 0.0;
  double t_star_at_beta = 0.0;
  bool graph_recoverable = false;   // sqrt(a) - sqrt(b) >= sqrt(2)
  bool threshold_defined = false;   // discriminant safely positive
  AlphaRegime alpha_regime = AlphaRegime::boundary;
  bool beta_ratio_integer = false;  // open window {m_star-2, m_star-1}
};

// Bundles all threshold quantities and regime flags for one parameter
// tuple. Non-recoverable or degenerate regimes are reported as flags
// (threshold values left at 0), never as errors.
ThresholdReport threshold_report(const SibmParams& params);

}  // namespace sibm
