#include "osmfso/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "osmfso/errors.hpp"

namespace osmfso {

namespace {

double log_gamma_norm(double alpha, double b0) { return alpha * std::log(alpha / b0) - std::lgamma(alpha); }

void check_s(double s) {
  if (!(s >= 0.0) || std::isnan(s)) throw DomainError("mgf: s must be >= 0");
}

}  // namespace

void PairDeltaParams::validate() const {
  if (!(std::isfinite(alpha) && alpha > 0.0)) throw ValidationError("PairDeltaParams: alpha must be > 0");
  if (!(std::isfinite(b0) && b0 > 0.0)) throw ValidationError("PairDeltaParams: b0 must be > 0");
  if (!(std::isfinite(a_tilde) && a_tilde >= 0.0)) throw ValidationError("PairDeltaParams: a_tilde must be >= 0");
}

PairDeltaParams delta_params(const HkParams& link1, const HkParams& link2) {
  link1.validate();
  link2.validate();
  if (link1.alpha != link2.alpha || link1.b0 != link2.b0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "delta_params: links into one aperture must share (alpha, b0); got (" << link1.alpha << ", "
        << link1.b0 << ") vs (" << link2.alpha << ", " << link2.b0 << ")";
    throw ValidationError(msg.str());
  }
  return {link1.alpha, link1.b0, std::abs(link2.mean_field() - link1.mean_field())};
}

double log_mgf_delta(double s, const PairDeltaParams& p, double rel_tol) {
  check_s(s);
  p.validate();
  if (s == 0.0) return 0.0;
  const double alpha = p.alpha;
  const double b0 = p.b0;
  const double a2s = p.a_tilde * p.a_tilde * s;
  const double norm = log_gamma_norm(alpha, b0);
  auto log_kernel = [=](double b) {
    const double d = 2.0 * b * s + 1.0;
    return norm + (alpha - 1.0) * std::log(b) - alpha * b / b0 - a2s / d - std::log(d);
  };
  // When the whole integrand sits below exp(-600) its coarse peak is factored out,
  // which keeps the log finite for strongly coherent, high-SNR branches.
  double peak = -std::numeric_limits<double>::infinity();
  for (double b = 1e-8 * b0; b < 1e4 * b0; b *= 1.25) peak = std::max(peak, log_kernel(b));
  const double shift = peak < -600.0 ? peak : 0.0;
  auto integrand = [=](double b) {
    if (b <= 0.0) return 0.0;
    const double log_v = log_kernel(b) - shift;
    if (log_v < -745.0) return 0.0;
    return std::exp(log_v);
  };
  specfun::IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.scale = b0;
  return std::log(specfun::integrate_semi_infinite(integrand, opts).value) + shift;
}

double mgf_delta(double s, const PairDeltaParams& p, double rel_tol) {
  if (s == 0.0) return 1.0;
  return std::exp(log_mgf_delta(s, p, rel_tol));
}

double mgf_delta_gcq(double s, const PairDeltaParams& p, const specfun::QuadratureRule& rule) {
  check_s(s);
  p.validate();
  const double alpha = p.alpha;
  const double b0 = p.b0;
  const double a2s = p.a_tilde * p.a_tilde * s;
  const double norm = log_gamma_norm(alpha, b0);
  return rule.apply([=](double t) {
    const double d = 2.0 * t * s + 1.0;
    return std::exp(norm + (alpha - 1.0) * std::log(t) - alpha * t / b0 - a2s / d) / d;
  });
}

double mgf_delta_gcq(double s, const PairDeltaParams& p, int points) {
  return mgf_delta_gcq(s, p, specfun::gcq_nodes(points));
}

double mgf_delta_k(double s, double alpha, double b0, double rel_tol) {
  PairDeltaParams{alpha, b0, 0.0}.validate();
  check_s(s);
  if (s == 0.0) return 1.0;
  const double z = alpha / (2.0 * s * b0);
  const double log_w = specfun::log_whittaker_w(-0.5 * alpha, 0.5 * (alpha - 1.0), z, rel_tol);
  return std::exp(0.5 * alpha * std::log(z) + 0.5 * z + log_w);
}

double asym_coeff(const PairDeltaParams& p) {
  p.validate();
  const double alpha = p.alpha;
  const double b0 = p.b0;
  if (p.a_tilde == 0.0) {
    if (!(alpha > 1.0))
      throw DomainError("asym_coeff: A~ = 0 requires alpha > 1 (the MGF decays slower than 1/s)");
    return alpha / (2.0 * b0 * (alpha - 1.0));
  }
  const double a2 = p.a_tilde * p.a_tilde;
  const double log_k = specfun::log_bessel_k(alpha - 1.0, p.a_tilde * std::sqrt(2.0 * alpha / b0));
  const double log_c = 0.5 * (alpha - 1.0) * std::log(0.5 * a2) + 0.5 * (alpha + 1.0) * std::log(alpha / b0) -
                       std::lgamma(alpha) + log_k;
  return std::exp(log_c);
}

double log_mgf_product(double s, std::span<const PairDeltaParams> branches, double rel_tol) {
  std::vector<std::pair<PairDeltaParams, int>> groups;
  for (const auto& b : branches) {
    bool found = false;
    for (auto& g : groups) {
      if (g.first == b) {
        ++g.second;
        found = true;
        break;
      }
    }
    if (!found) groups.emplace_back(b, 1);
  }
  double acc = 0.0;
  for (const auto& [params, count] : groups) acc += count * log_mgf_delta(s, params, rel_tol);
  return acc;
}

}  // namespace osmfso
