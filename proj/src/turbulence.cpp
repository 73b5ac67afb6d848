#include "osmfso/turbulence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "osmfso/errors.hpp"

namespace osmfso {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

double log_gamma_norm(double alpha, double b0) { return alpha * std::log(alpha / b0) - std::lgamma(alpha); }

}  // namespace

void HkParams::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "HkParams: alpha must be > 0");
  require(std::isfinite(b0) && b0 > 0.0, "HkParams: b0 must be > 0");
  require(std::isfinite(a_det) && a_det >= 0.0, "HkParams: a_det must be >= 0");
  require(std::isfinite(theta), "HkParams: theta must be finite");
}

double LinkGeometry::wavenumber() const noexcept { return 2.0 * std::numbers::pi / wavelength; }

void LinkGeometry::validate() const {
  require(std::isfinite(wavelength) && wavelength > 0.0, "LinkGeometry: wavelength must be > 0");
  require(std::isfinite(cn2) && cn2 > 0.0, "LinkGeometry: cn2 must be > 0");
  require(std::isfinite(distance) && distance > 0.0, "LinkGeometry: distance must be > 0");
}

double rytov_variance(const LinkGeometry& geom) {
  geom.validate();
  return 1.23 * geom.cn2 * std::pow(geom.wavenumber(), 7.0 / 6.0) * std::pow(geom.distance, 11.0 / 6.0);
}

HkParams hk_params_from_geometry(const LinkGeometry& geom, double b0) {
  require(std::isfinite(b0) && b0 > 0.0, "hk_params_from_geometry: b0 must be > 0");
  const double s2 = rytov_variance(geom);
  const double s1 = std::sqrt(s2);
  HkParams p;
  p.alpha = 0.71 * std::pow(s1, 0.8);
  const double rho = 4.88 / (s2 * (1.0 + 0.2 * s2));
  p.b0 = b0;
  p.a_det = std::sqrt(rho * b0);
  p.theta = 0.0;
  return p;
}

double scintillation_index(const HkParams& p) {
  p.validate();
  const double a = p.alpha;
  const double r = p.rho();
  return (a + 2.0 * a * r + 2.0) / (a * (1.0 + r) * (1.0 + r));
}

double hk_pdf_integral(double intensity, const HkParams& p, double rel_tol) {
  p.validate();
  if (intensity < 0.0) throw DomainError("hk_pdf: intensity must be >= 0");
  const double alpha = p.alpha;
  const double b0 = p.b0;
  const double amp = p.a_det;
  if (intensity == 0.0 && amp == 0.0) {
    return alpha > 1.0 ? alpha / (b0 * (alpha - 1.0)) : std::numeric_limits<double>::infinity();
  }
  const double root = std::sqrt(intensity);
  const double gap = (root - amp) * (root - amp);
  const double cross = 2.0 * amp * root;
  auto log_kernel = [=](double b) { return (alpha - 2.0) * std::log(b) - alpha * b / b0 - gap / b; };
  // Peak of the kernel. Only the excess of its log over 600 is pulled out, enough
  // to keep tiny intensities from overflowing without flushing the flanks to zero.
  const double lin = alpha - 2.0;
  const double disc = std::sqrt(lin * lin + 4.0 * alpha * gap / b0);
  const double peak = lin > 0.0 ? (lin + disc) / (2.0 * alpha / b0) : 2.0 * gap / (disc - lin);
  const double shift = peak > 0.0 ? std::max(0.0, log_kernel(peak) - 600.0) : 0.0;
  // exp(-(I + A^2)/b) I0(2A sqrt(I)/b) == exp(-(sqrt(I) - A)^2 / b) * I0e(2A sqrt(I)/b)
  auto integrand = [=](double b) {
    if (b <= 0.0) return 0.0;
    const double log_v = log_kernel(b) - shift;
    if (log_v < -745.0) return 0.0;
    return std::exp(log_v) * specfun::bessel_i0_scaled(cross / b);
  };
  specfun::IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.scale = b0;
  const double log_value = std::log(specfun::integrate_semi_infinite(integrand, opts).value);
  return std::exp(log_value + shift + log_gamma_norm(alpha, b0));
}

double hk_pdf_alpha1(double intensity, const HkParams& p) {
  p.validate();
  if (intensity < 0.0) throw DomainError("hk_pdf: intensity must be >= 0");
  const double a2 = p.a_det * p.a_det;
  const double lo = std::min(intensity, a2);
  const double hi = std::max(intensity, a2);
  if (hi == 0.0) return std::numeric_limits<double>::infinity();
  const double x_lo = 2.0 * std::sqrt(lo / p.b0);
  const double x_hi = 2.0 * std::sqrt(hi / p.b0);
  // I0(x_lo) K0(x_hi) with the exponentials folded together to avoid overflow.
  const double k0_scaled = specfun::bessel_k_scaled(0.0, x_hi);
  return 2.0 / p.b0 * specfun::bessel_i0_scaled(x_lo) * k0_scaled * std::exp(x_lo - x_hi);
}

bool hk_alpha1_fast_path_enabled() {
  static const bool enabled = [] {
    for (double amp : {0.5, 2.0}) {
      for (double b0 : {1.0, 2.0}) {
        for (double intensity : {0.1, 1.0, 3.0, 10.0}) {
          const HkParams p{1.0, b0, amp, 0.0};
          const double closed = hk_pdf_alpha1(intensity, p);
          const double numeric = hk_pdf_integral(intensity, p, 1e-10);
          if (!(std::abs(closed - numeric) <= 1e-4 * numeric)) return false;
        }
      }
    }
    return true;
  }();
  return enabled;
}

double hk_pdf(double intensity, const HkParams& p, double rel_tol) {
  if (p.alpha == 1.0 && intensity > 0.0 && p.a_det * p.a_det != intensity && hk_alpha1_fast_path_enabled())
    return hk_pdf_alpha1(intensity, p);
  return hk_pdf_integral(intensity, p, rel_tol);
}

double k_pdf(double intensity, double alpha, double b0) {
  require(alpha > 0.0 && b0 > 0.0, "k_pdf: alpha and b0 must be > 0");
  if (intensity < 0.0) throw DomainError("k_pdf: intensity must be >= 0");
  if (intensity == 0.0)
    return alpha > 1.0 ? alpha / (b0 * (alpha - 1.0)) : std::numeric_limits<double>::infinity();
  const double u = alpha * intensity / b0;
  const double x = 2.0 * std::sqrt(u);
  const double log_pref = std::log(2.0 * alpha / b0) - std::lgamma(alpha) + 0.5 * (alpha - 1.0) * std::log(u);
  return std::exp(log_pref + specfun::log_bessel_k(alpha - 1.0, x));
}

double hk_moment(int order, const HkParams& p, double rel_tol) {
  p.validate();
  if (order < 1) throw std::invalid_argument("hk_moment: order must be >= 1");
  if (order == 1) return 1.0;
  const double alpha = p.alpha;
  const double b0 = p.b0;
  const double a2 = p.a_det * p.a_det;
  const double norm = log_gamma_norm(alpha, b0);
  const int n = order;
  // n! b^n L_n(-A^2/b) = sum_k C(n,k) n!/k! A^{2k} b^{n-k}
  auto conditional = [n, a2](double b) {
    double sum = 0.0;
    double coeff = std::tgamma(n + 1.0);  // C(n,0) n!/0!
    double a_pow = 1.0;
    for (int k = 0; k <= n; ++k) {
      sum += coeff * a_pow * std::pow(b, n - k);
      coeff *= static_cast<double>(n - k) / ((k + 1.0) * (k + 1.0));
      a_pow *= a2;
    }
    return sum;
  };
  auto integrand = [=](double b) {
    if (b <= 0.0) return 0.0;
    const double log_w = norm + (alpha - 1.0) * std::log(b) - alpha * b / b0;
    if (log_w < -745.0) return 0.0;
    return std::exp(log_w) * conditional(b);
  };
  specfun::IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.scale = b0 * std::max(1.0, static_cast<double>(n) / alpha);
  const double raw = specfun::integrate_semi_infinite(integrand, opts).value;
  const double mean = b0 + a2;
  return raw / std::pow(mean, n);
}

double sample_mixing(const HkParams& p, Rng& rng) {
  std::gamma_distribution<double> gamma(p.alpha, p.b0 / p.alpha);
  return gamma(rng);
}

std::complex<double> sample_field_given_b(const HkParams& p, double b, Rng& rng) {
  std::normal_distribution<double> unit;
  const double sigma = std::sqrt(0.5 * b);
  const double re = unit(rng);
  const double im = unit(rng);
  return p.mean_field() + std::complex<double>(sigma * re, sigma * im);
}

std::complex<double> sample_field(const HkParams& p, Rng& rng) {
  const double b = sample_mixing(p, rng);
  return sample_field_given_b(p, b, rng);
}

}  // namespace osmfso
