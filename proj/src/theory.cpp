#include "sibm/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace sibm {

namespace {

constexpr double kDegenerateTol = 1e-9;
constexpr double kIntegerRatioTol = 1e-9;

void require_rates(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("rates a, b must be positive");
}

// Discriminant of b x^2 - (a+b-2) x + a = 0 with x = e^{2 beta}.
double discriminant(double a, double b) {
  const double s = a + b - 2.0;
  return s * s - 4.0 * a * b;
}

bool safely_recoverable(double a, double b) {
  return std::sqrt(a) - std::sqrt(b) > std::sqrt(2.0) + kDegenerateTol;
}

}  // namespace

double g(double a, double b, double beta) {
  return (b * std::exp(2.0 * beta) + a * std::exp(-2.0 * beta)) / 2.0 -
         (a + b) / 2.0 + 1.0;
}

double g_tilde(double a, double b, double beta) {
  const double knee = 0.25 * std::log(a / b);
  if (beta < knee) return g(a, b, beta);
  return std::sqrt(a * b) - (a + b) / 2.0 + 1.0;
}

double beta_star(double a, double b) {
  require_rates(a, b);
  if (!safely_recoverable(a, b)) {
    throw std::domain_error(
        "beta_star undefined: need sqrt(a) - sqrt(b) > sqrt(2) with margin");
  }
  const double s = a + b - 2.0;
  return 0.5 * std::log((s - std::sqrt(discriminant(a, b))) / (2.0 * b));
}

double beta_prime(double a, double b) {
  require_rates(a, b);
  if (!safely_recoverable(a, b)) {
    throw std::domain_error(
        "beta_prime undefined: need sqrt(a) - sqrt(b) > sqrt(2) with margin");
  }
  const double s = a + b - 2.0;
  return 0.5 * std::log((s + std::sqrt(discriminant(a, b))) / (2.0 * b));
}

double beta_star_bisection(double a, double b) {
  require_rates(a, b);
  if (!safely_recoverable(a, b)) {
    throw std::domain_error("beta_star bisection: discriminant not safely positive");
  }
  // g(0+) -> 1 > 0 and g(ln(a/b)/4) < 0 bracket the smaller root.
  double lo = 0.0;
  double hi = 0.25 * std::log(a / b);
  if (!(g(a, b, hi) < 0.0)) {
    throw std::domain_error("beta_star bisection: bracket failed");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (g(a, b, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool beta_ratio_is_integer(double a, double b, double beta) {
  const double ratio = beta_star(a, b) / beta;
  const double nearest = std::round(ratio);
  if (nearest < 1.0) return false;
  return std::abs(ratio - nearest) <= kIntegerRatioTol * nearest;
}

int m_star(double a, double b, double beta) {
  if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
  double ratio = beta_star(a, b) / beta;
  const double nearest = std::round(ratio);
  if (nearest >= 1.0 && std::abs(ratio - nearest) <= kIntegerRatioTol * nearest) {
    ratio = nearest;
  }
  return 2 * static_cast<int>(std::floor(ratio)) + 1;
}

double f_beta(double a, double b, double beta, double t) {
  const double root = std::sqrt(t * t + a * b);
  return root - t * (std::log(root + t) - std::log(b)) - (a + b) / 2.0 + 1.0 +
         2.0 * beta * t;
}

double t_star(double a, double b, double beta) {
  return (b * std::exp(2.0 * beta) - a * std::exp(-2.0 * beta)) / 2.0;
}

const char* to_string(AlphaRegime regime) {
  switch (regime) {
    case AlphaRegime::above:
      return "above";
    case AlphaRegime::below:
      return "below";
    default:
      return "boundary";
  }
}

ThresholdReport threshold_report(const SibmParams& params) {
  const SibmParams valid = validate_params(params);
  ThresholdReport report;
  report.graph_recoverable =
      std::sqrt(valid.a) - std::sqrt(valid.b) >= std::sqrt(2.0);
  report.threshold_defined = safely_recoverable(valid.a, valid.b);
  report.g_at_beta = g(valid.a, valid.b, valid.beta);
  report.g_tilde_at_beta = g_tilde(valid.a, valid.b, valid.beta);
  report.t_star_at_beta = t_star(valid.a, valid.b, valid.beta);

  const double cross_coupling = valid.b * valid.beta;
  const double tol = 1e-12 * std::max(valid.alpha, cross_coupling);
  if (std::abs(valid.alpha - cross_coupling) <= tol) {
    report.alpha_regime = AlphaRegime::boundary;
  } else if (valid.alpha > cross_coupling) {
    report.alpha_regime = AlphaRegime::above;
  } else {
    report.alpha_regime = AlphaRegime::below;
  }

  if (report.threshold_defined) {
    report.beta_star = beta_star(valid.a, valid.b);
    report.beta_prime = beta_prime(valid.a, valid.b);
    report.m_star = m_star(valid.a, valid.b, valid.beta);
    report.beta_ratio_integer = beta_ratio_is_integer(valid.a, valid.b, valid.beta);
  }
  return report;
}

}  // namespace sibm
