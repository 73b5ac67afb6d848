#include "osmfso/coded.hpp"

#include <cmath>
#include <numbers>

#include "osmfso/errors.hpp"

namespace osmfso {

namespace {

// Margin applied to the domain predicate when scanning D(theta).
constexpr double kDomainMargin = 1e-6;

}  // namespace

ConvCodeSpec builtin_rate13_k3() {
  ConvCodeSpec code;
  code.name = "rate13_k3";
  code.rate_num = 1;
  code.rate_den = 3;
  code.constraint_length = 3;
  code.bound_kernel = [](double d) {
    const double d2 = d * d;
    const double den = 1.0 - 2.0 * d2;
    return d2 * d2 * d2 / (den * den);
  };
  code.in_domain = [](double d) { return d >= 0.0 && d < std::numbers::sqrt2 / 2.0; };
  return code;
}

ConvCodeSpec identity_code() {
  ConvCodeSpec code;
  code.name = "identity";
  code.bound_kernel = [](double d) { return d; };
  code.in_domain = [](double d) { return std::isfinite(d); };
  return code;
}

double log_d_theta(double mu, double theta, const OsmScenario& scenario, double rel_tol) {
  if (!(mu > 0.0)) throw DomainError("d_theta: mu must be > 0");
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2.0)) throw DomainError("d_theta: theta must lie in (0, pi/2]");
  const double sn = std::sin(theta);
  const double s = mu / (8.0 * sn * sn);
  const int m = scenario.m_tx();
  if (m == 2) return log_mgf_product(s, scenario.branches(0, 1), rel_tol);
  double acc = 0.0;
  for (int m1 = 0; m1 < m; ++m1)
    for (int m2 = m1 + 1; m2 < m; ++m2) acc += 2.0 * log_mgf_product(s, scenario.branches(m1, m2), rel_tol);
  return acc;
}

double d_theta(double mu, double theta, const OsmScenario& scenario) {
  return std::exp(log_d_theta(mu, theta, scenario));
}

CodedBound coded_abep_bound(double mu, const ConvCodeSpec& code, const OsmScenario& scenario, double rel_tol) {
  if (!code.bound_kernel || !code.in_domain) throw ValidationError("coded_abep_bound: code is missing its kernel");
  const double inner = detail::inner_tolerance(rel_tol);
  CodedBound out;
  // D(theta) grows with theta, so its supremum sits at pi/2.
  out.d_max = std::exp(log_d_theta(mu, std::numbers::pi / 2.0, scenario, inner));
  if (!code.in_domain(out.d_max * (1.0 + kDomainMargin))) {
    out.divergent = true;
    return out;
  }
  bool left_domain = false;
  auto log_d = [&](double theta) { return log_d_theta(mu, theta, scenario, inner); };
  auto kernel = [&](double d) {
    if (!code.in_domain(d * (1.0 + kDomainMargin))) left_domain = true;
    return code.bound_kernel(d);
  };
  const double integral = detail::theta_average(log_d, kernel, rel_tol);
  if (left_domain) {
    out.divergent = true;
    return out;
  }
  out.value = integral / scenario.bits_per_symbol();
  return out;
}

}  // namespace osmfso
