#pragma once

// MGF of the squared envelope |Delta_n|^2 of the channel difference
// Delta_n = h_{1,n} - h_{2,n} between two transmitters seen by receive aperture n.
//
// Conditioned on the shared diffuse power b, Delta_n is complex Gaussian with
// mean A~ e^{j phi} and per-component variance b, so
//   E{exp(-s |Delta|^2) | b} = exp(-A~^2 s / (2 b s + 1)) / (2 b s + 1).
// Averaging over b ~ Gamma(alpha, mean b0) gives every form below.

#include <span>

#include "osmfso/specfun.hpp"
#include "osmfso/turbulence.hpp"

namespace osmfso {

struct PairDeltaParams {
  double alpha = 1.0;
  double b0 = 1.0;
  double a_tilde = 0.0;  ///< |A_2 e^{j theta_2} - A_1 e^{j theta_1}|

  void validate() const;
  bool operator==(const PairDeltaParams&) const = default;
};

/// Parameters of |h_1 - h_2|^2 for two links into the same aperture.
/// Throws ValidationError when the links disagree on alpha or b0.
PairDeltaParams delta_params(const HkParams& link1, const HkParams& link2);

/// MGF by adaptive quadrature of the gamma average. Exactly 1 at s == 0.
double mgf_delta(double s, const PairDeltaParams& p, double rel_tol = specfun::kDefaultRelTol);

/// log of mgf_delta; preferred when multiplying many branches.
double log_mgf_delta(double s, const PairDeltaParams& p, double rel_tol = specfun::kDefaultRelTol);

/// Same average evaluated with a fixed J-point Gauss-Chebyshev rule.
double mgf_delta_gcq(double s, const PairDeltaParams& p, const specfun::QuadratureRule& rule);
double mgf_delta_gcq(double s, const PairDeltaParams& p, int points);

/// Closed form for A~ = 0:
/// (alpha/(2 s b0))^{alpha/2} exp(alpha/(4 s b0)) W_{-alpha/2,(alpha-1)/2}(alpha/(2 s b0)).
double mgf_delta_k(double s, double alpha, double b0, double rel_tol = specfun::kDefaultRelTol);

/// High-SNR coefficient c with M(s) = c / s + o(1/s).
/// A~ > 0: (A~^2/2)^{(alpha-1)/2} (alpha/b0)^{(alpha+1)/2} / Gamma(alpha) K_{alpha-1}(A~ sqrt(2 alpha / b0)).
/// A~ = 0: alpha / (2 b0 (alpha - 1)); requires alpha > 1.
double asym_coeff(const PairDeltaParams& p);

/// Sum over branches of log M(s), grouping identical branch parameters.
double log_mgf_product(double s, std::span<const PairDeltaParams> branches,
                       double rel_tol = specfun::kDefaultRelTol);

}  // namespace osmfso
