#pragma once

// Special functions and quadrature rules shared by the whole library.
// Everything here is a pure function of its arguments.

#include <cstddef>
#include <functional>
#include <vector>

namespace osmfso::specfun {

inline constexpr double kOracleRelTol = 1e-10;
inline constexpr double kDefaultRelTol = 1e-8;

enum class QuadratureKind { gauss_chebyshev_semi_infinite, adaptive };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::gauss_chebyshev_semi_infinite;

  std::size_t size() const noexcept { return nodes.size(); }

  /// Sum of w_j f(t_j).
  template <typename F>
  double apply(F&& f) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * f(nodes[j]);
    return acc;
  }
};

/// J-point Gauss-Chebyshev rule mapped onto (0, inf) with the tangent
/// transform t = tan(pi/4 * cos((2j-1)pi/(2J)) + pi/4).
QuadratureRule gcq_nodes(int points);

/// I_0(x). Throws OverflowError for |x| > 700.
double bessel_i0(double x);

/// exp(-|x|) * I_0(x); finite for every x.
double bessel_i0_scaled(double x);

/// K_nu(x) for real order (K_nu == K_{-nu}) and x > 0.
/// Throws DomainError for x <= 0 and OverflowError when K_nu(x) exceeds double range.
double bessel_k(double order, double x);

/// exp(x) * K_nu(x); Hankel expansion beyond x = 600, so finite for every x > 0.
double bessel_k_scaled(double order, double x);

/// log K_nu(x); uses the small-argument limit Gamma(|nu|)/2 (2/x)^|nu| where K_nu overflows.
double log_bessel_k(double order, double x);

/// Whittaker W_{p,q}(x) from its Laplace-type integral representation.
/// Requires x > 0 and 1/2 - p + |q| > 0 for one sign choice of q (W is even in q).
double whittaker_w(double p, double q, double x, double rel_tol = kDefaultRelTol);

/// log W_{p,q}(x); same domain as whittaker_w but safe where exp(-x/2) underflows.
double log_whittaker_w(double p, double q, double x, double rel_tol = kDefaultRelTol);

/// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2)).
double gauss_q(double x);

/// Two-exponential approximation Q(x) ~ exp(-x^2/2)/12 + exp(-2x^2/3)/4, x >= 0.
double chiani_q(double x);

struct IntegrationOptions {
  double rel_tol = kDefaultRelTol;
  double abs_tol = 0.0;
  /// Cap on the number of subintervals held by the adaptive scheme.
  int max_intervals = 4000;
  /// Characteristic length of the integrand on (0, inf): split point between the
  /// direct head (0, scale] and the tail mapped by t = scale / u.
  double scale = 1.0;
};

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
/// Throws ConvergenceError (carrying the best estimate) when max_intervals is reached
/// or only intervals at machine resolution are left to refine.
IntegrationResult integrate_finite(const Integrand& f, double a, double b,
                                   const IntegrationOptions& opts = {});

/// Integral over (0, inf): integrate_finite on (0, scale] plus the tail under
/// t = scale / u, u in (0, 1]. Both pieces are held to opts.
IntegrationResult integrate_semi_infinite(const Integrand& f, const IntegrationOptions& opts = {});

}  // namespace osmfso::specfun
