#pragma once

// Homodyned-K (H-K) turbulence channel: a deterministic field A e^{j theta} plus
// a circular Gaussian field whose mean power b is gamma distributed.

#include <complex>

#include "osmfso/rng.hpp"
#include "osmfso/specfun.hpp"

namespace osmfso {

/// Per-link H-K parameters.
struct HkParams {
  double alpha = 1.0;  ///< effective number of scatterers (gamma shape)
  double b0 = 1.0;     ///< mean power of the diffuse field, E{b}
  double a_det = 0.0;  ///< amplitude of the deterministic field
  double theta = 0.0;  ///< phase of the deterministic field [rad]

  /// Coherence parameter A^2 / b0.
  double rho() const noexcept { return a_det * a_det / b0; }
  std::complex<double> mean_field() const { return std::polar(a_det, theta); }
  /// Throws ValidationError unless alpha > 0, b0 > 0, a_det >= 0 and all finite.
  void validate() const;
};

/// Physical link description used by the Rytov calibration.
struct LinkGeometry {
  double wavelength = 1550e-9;  ///< [m]
  double cn2 = 1.7e-14;         ///< refractive-index structure constant [m^-2/3]
  double distance = 1000.0;     ///< [m]

  double wavenumber() const noexcept;
  void validate() const;
};

/// sigma_1^2 = 1.23 Cn^2 k^{7/6} L^{11/6}.
double rytov_variance(const LinkGeometry& geom);

/// alpha = 0.71 sigma_1^{4/5}, rho = 4.88 / (sigma_1^2 (1 + 0.2 sigma_1^2)),
/// with A = sqrt(rho * b0) and theta = 0.
HkParams hk_params_from_geometry(const LinkGeometry& geom, double b0);

/// (alpha + 2 alpha rho + 2) / (alpha (1 + rho)^2).
double scintillation_index(const HkParams& p);

/// H-K intensity density from the gamma-mixed Rician integral.
/// At alpha == 1 a closed form (I0 * K0 product) is used, provided it passed
/// its one-time equivalence check against the integral.
double hk_pdf(double intensity, const HkParams& p, double rel_tol = specfun::kDefaultRelTol);

/// Always evaluates the defining integral (no alpha == 1 shortcut).
double hk_pdf_integral(double intensity, const HkParams& p, double rel_tol = specfun::kDefaultRelTol);

/// alpha == 1 closed form: (2/b0) I0(2 sqrt(min(I, A^2)/b0)) K0(2 sqrt(max(I, A^2)/b0)).
double hk_pdf_alpha1(double intensity, const HkParams& p);

/// True if the alpha == 1 closed form reproduced the integral on its check grid.
bool hk_alpha1_fast_path_enabled();

/// K-distributed intensity (the A = 0 limit of hk_pdf), mean b0:
/// (2 alpha / (b0 Gamma(alpha))) (alpha I / b0)^{(alpha-1)/2} K_{alpha-1}(2 sqrt(alpha I / b0)).
double k_pdf(double intensity, double alpha, double b0);

/// E{I^nu} / E{I}^nu from the compound representation E{I^nu | b} = nu! b^nu L_nu(-A^2/b),
/// with the gamma average done by quadrature.
double hk_moment(int order, const HkParams& p, double rel_tol = specfun::kDefaultRelTol);

/// Draw b ~ Gamma(shape alpha, scale b0 / alpha).
double sample_mixing(const HkParams& p, Rng& rng);

/// Field sample for a given diffuse power b: A e^{j theta} + CN(0, b), per-component variance b/2.
std::complex<double> sample_field_given_b(const HkParams& p, double b, Rng& rng);

/// One H-K field sample; |h|^2 is H-K distributed.
std::complex<double> sample_field(const HkParams& p, Rng& rng);

}  // namespace osmfso
