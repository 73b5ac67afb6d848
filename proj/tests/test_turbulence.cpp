#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "osmfso/errors.hpp"
#include "osmfso/rng.hpp"
#include "osmfso/turbulence.hpp"
#include "test_support.hpp"

using namespace osmfso;
using testing::rel_err;

namespace {

// E{I^n} from the gamma moments E{b^m} = (b0/alpha)^m Gamma(alpha+m)/Gamma(alpha).
double raw_moment(int n, const HkParams& p) {
  const double a2 = p.a_det * p.a_det;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const int m = n - k;
    const double binom = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(m + 1.0));
    const double gamma_moment =
        std::pow(p.b0 / p.alpha, m) * std::exp(std::lgamma(p.alpha + m) - std::lgamma(p.alpha));
    sum += binom * std::tgamma(n + 1.0) / std::tgamma(k + 1.0) * std::pow(a2, k) * gamma_moment;
  }
  return sum;
}

// Asymptotic Kolmogorov tail P(sqrt(n) D > lambda).
double kolmogorov_tail(double lambda) {
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) sum += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(sum, 0.0, 1.0);
}

std::vector<double> sample_intensities(const HkParams& p, std::uint64_t seed, int n) {
  Rng rng = make_stream(seed, {0});
  std::vector<double> out(n);
  for (auto& x : out) x = std::norm(sample_field(p, rng));
  return out;
}

// Mean and standard error of a sample statistic.
struct Summary {
  double mean;
  double se;
};

Summary summarize(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (v.size() - 1.0) / v.size())};
}

}  // namespace

TEST_CASE("rytov_variance: reference link, linearity and distance power law") {
  const LinkGeometry g{1550e-9, 1.7e-14, 1000.0};
  const double k = 2.0 * std::numbers::pi / 1550e-9;
  const double direct = 1.23 * 1.7e-14 * std::pow(k, 7.0 / 6.0) * std::pow(1000.0, 11.0 / 6.0);
  CHECK(rel_err(rytov_variance(g), direct) < 1e-14);
  CHECK(std::abs(rytov_variance(g) - 0.34) < 0.01);
  LinkGeometry doubled = g;
  doubled.cn2 *= 2.0;
  CHECK(rel_err(rytov_variance(doubled), 2.0 * rytov_variance(g)) < 1e-14);
  LinkGeometry far = g;
  far.distance *= 2.0;
  CHECK(rel_err(rytov_variance(far), std::pow(2.0, 11.0 / 6.0) * rytov_variance(g)) < 1e-13);
  CHECK(rel_err(g.wavenumber(), k) < 1e-15);
}

TEST_CASE("LinkGeometry and HkParams reject non-positive fields") {
  CHECK_THROWS_AS(rytov_variance({0.0, 1e-14, 1000.0}), ValidationError);
  CHECK_THROWS_AS(rytov_variance({1550e-9, -1e-14, 1000.0}), ValidationError);
  CHECK_THROWS_AS(rytov_variance({1550e-9, 1e-14, 0.0}), ValidationError);
  CHECK_THROWS_AS((HkParams{0.0, 1.0, 0.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((HkParams{1.0, 0.0, 0.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((HkParams{1.0, 1.0, -1.0, 0.0}.validate()), ValidationError);
  CHECK_NOTHROW((HkParams{1.0, 1.0, 0.0, 0.0}.validate()));
  CHECK(HkParams{1.0, 2.0, 0.0, 0.0}.rho() == 0.0);
  CHECK(HkParams{1.0, 2.0, 2.0, 0.0}.rho() == 2.0);
}

TEST_CASE("hk_params_from_geometry: reference link and unit Rytov variance") {
  const LinkGeometry g{1550e-9, 1.7e-14, 1000.0};
  const double s2 = rytov_variance(g);
  const auto p = hk_params_from_geometry(g, 1.0);
  CHECK(rel_err(p.alpha, 0.71 * std::pow(s2, 0.4)) < 1e-14);
  CHECK(rel_err(p.rho(), 4.88 / (s2 * (1.0 + 0.2 * s2))) < 1e-13);
  CHECK(std::abs(p.alpha - 0.46) < 0.01);
  CHECK(std::abs(p.rho() - 13.4) < 0.2);
  CHECK(p.theta == 0.0);

  // Choose Cn^2 so that sigma_1^2 = 1 exactly.
  LinkGeometry unit = g;
  unit.cn2 = g.cn2 / s2;
  REQUIRE(rel_err(rytov_variance(unit), 1.0) < 1e-14);
  const auto q = hk_params_from_geometry(unit, 2.5);
  CHECK(rel_err(q.alpha, 0.71) < 1e-13);
  CHECK(rel_err(q.rho(), 4.88 / 1.2) < 1e-13);
  CHECK(q.b0 == 2.5);
  CHECK(rel_err(q.a_det, std::sqrt(4.88 / 1.2 * 2.5)) < 1e-13);
}

TEST_CASE("hk_params_from_geometry: alpha increases and rho decreases with distance") {
  double last_alpha = 0.0;
  double last_rho = std::numeric_limits<double>::infinity();
  for (double L = 100.0; L <= 5000.0; L += 100.0) {
    const auto p = hk_params_from_geometry({1550e-9, 1.7e-14, L}, 1.0);
    CHECK(p.alpha > last_alpha);
    CHECK(p.rho() < last_rho);
    last_alpha = p.alpha;
    last_rho = p.rho();
  }
}

TEST_CASE("scintillation_index: examples and limits") {
  CHECK(scintillation_index({2.0, 1.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  const double rho = 1e6;
  const double si = scintillation_index({2.0, 1.0, std::sqrt(rho), 0.0});
  CHECK(std::abs(si - 2.0 / rho) < 1e-5 * (2.0 / rho));
  const double alpha = 1e6;
  CHECK(rel_err(scintillation_index({alpha, 1.0, 0.0, 0.0}), 1.0 + 2.0 / alpha) < 1e-12);
  CHECK(std::abs(scintillation_index({alpha, 1.0, 0.0, 0.0}) - 1.0) < 1e-5);
}

TEST_CASE("k_pdf: normalization, scintillation index and domain") {
  for (double alpha : {1.5, 2.0, 4.0}) {
    for (double b0 : {1.0, 2.0}) {
      CAPTURE(alpha);
      CAPTURE(b0);
      auto f = [=](double i) { return k_pdf(i, alpha, b0); };
      auto m1 = [=](double i) { return i * k_pdf(i, alpha, b0); };
      auto m2 = [=](double i) { return i * i * k_pdf(i, alpha, b0); };
      const double norm = testing::oracle_semi_infinite(f, b0);
      const double mean = testing::oracle_semi_infinite(m1, b0);
      const double second = testing::oracle_semi_infinite(m2, b0);
      CHECK(std::abs(norm - 1.0) < 1e-6);
      CHECK(rel_err(mean, b0) < 1e-6);
      CHECK(std::abs(second / (mean * mean) - 1.0 - (1.0 + 2.0 / alpha)) < 1e-4);
    }
  }
  CHECK_THROWS_AS(k_pdf(-1.0, 2.0, 1.0), DomainError);
  CHECK(rel_err(k_pdf(0.0, 2.0, 1.0), 2.0) < 1e-15);
}

TEST_CASE("hk_pdf: A = 0 equals the K density on [1e-3, 20]") {
  for (double alpha : {0.8, 1.5, 2.0, 4.0}) {
    for (double b0 : {1.0, 2.0}) {
      const HkParams p{alpha, b0, 0.0, 0.0};
      for (double i = 1e-3; i <= 20.0; i *= 1.5) {
        CAPTURE(alpha);
        CAPTURE(b0);
        CAPTURE(i);
        CHECK(rel_err(hk_pdf(i, p), k_pdf(i, alpha, b0)) < 1e-7);
      }
    }
  }
}

TEST_CASE("hk_pdf: integral oracle at isolated points") {
  const HkParams p{1.5, 2.0, 1.3, 0.4};
  for (double i : {0.05, 0.7, 1.69, 4.0, 12.0}) {
    auto integrand = [&](double b) {
      if (b <= 1e-300) return 0.0;
      const double arg = 2.0 * p.a_det * std::sqrt(i) / b;
      // exp(-x) I0(x); the asymptotic series is exact to double precision beyond 500.
      const double i0s = arg > 500.0 ? (1.0 + 1.0 / (8.0 * arg) + 9.0 / (128.0 * arg * arg)) /
                                           std::sqrt(2.0 * std::numbers::pi * arg)
                                     : std::cyl_bessel_i(0.0, arg) * std::exp(-arg);
      const double gap = (std::sqrt(i) - p.a_det) * (std::sqrt(i) - p.a_det);
      return std::exp((p.alpha - 2.0) * std::log(b) - p.alpha * b / p.b0 - gap / b) * i0s;
    };
    const double want = std::pow(p.alpha / p.b0, p.alpha) / std::tgamma(p.alpha) *
                        testing::oracle_semi_infinite(integrand, p.b0);
    CAPTURE(i);
    CHECK(rel_err(hk_pdf(i, p), want) < 1e-8);
  }
  CHECK_THROWS_AS(hk_pdf(-0.1, p), DomainError);
}

TEST_CASE("hk_pdf: normalization and first two moments on the parameter grid") {
  for (double alpha : {0.8, 1.0, 1.5, 2.0, 4.0}) {
    for (double rho : {0.0, 1.0, 4.0, 13.0}) {
      const double b0 = 1.0;
      const HkParams p{alpha, b0, std::sqrt(rho * b0), 0.0};
      CAPTURE(alpha);
      CAPTURE(rho);
      // Below 1e-300 the density carries no measurable mass; skip denormal abscissas.
      auto pdf = [&](double i) { return i < 1e-300 ? 0.0 : hk_pdf(i, p); };
      auto f = [&](double i) { return pdf(i); };
      auto m1 = [&](double i) { return i * pdf(i); };
      auto m2 = [&](double i) { return i * i * pdf(i); };
      // Split at the coherent intensity, where the density peaks for large rho.
      const double split = std::max(1.0, rho);
      const double norm = testing::oracle_semi_infinite(f, split);
      const double mean = testing::oracle_semi_infinite(m1, split);
      const double second = testing::oracle_semi_infinite(m2, split);
      CHECK(std::abs(norm - 1.0) < 1e-5);
      CHECK(rel_err(mean, b0 * (1.0 + rho)) < 1e-5);
      CHECK(rel_err(second / (mean * mean), 1.0 + scintillation_index(p)) < 1e-5);
    }
  }
}

TEST_CASE("hk_pdf: (2, 2, 2) normalization and mean to 1e-6") {
  const HkParams p{2.0, 2.0, 2.0, 0.0};
  auto f = [&](double i) { return hk_pdf(i, p); };
  auto m1 = [&](double i) { return i * hk_pdf(i, p); };
  CHECK(std::abs(testing::oracle_semi_infinite(f, 4.0) - 1.0) < 1e-6);
  CHECK(std::abs(testing::oracle_semi_infinite(m1, 4.0) - 2.0 * 3.0) < 1e-6 * 6.0);
}

TEST_CASE("hk_pdf: alpha = 1 closed form passes its gate and matches the integral") {
  REQUIRE(hk_alpha1_fast_path_enabled());
  for (double amp : {0.3, 1.0, 2.5}) {
    for (double b0 : {0.5, 1.0, 3.0}) {
      const HkParams p{1.0, b0, amp, 0.0};
      for (double i : {0.01, 0.2, 1.0, 5.0, 15.0}) {
        CAPTURE(amp);
        CAPTURE(b0);
        CAPTURE(i);
        CHECK(rel_err(hk_pdf_alpha1(i, p), hk_pdf_integral(i, p, 1e-11)) < 1e-8);
      }
    }
  }
}

TEST_CASE("hk_moment: examples and the closed gamma-moment sum") {
  const HkParams k2{2.0, 1.0, 0.0, 0.0};
  CHECK(hk_moment(1, k2) == 1.0);
  CHECK(rel_err(hk_moment(2, k2), 3.0) < 1e-9);
  CHECK_THROWS_AS(hk_moment(0, k2), std::invalid_argument);
  for (double alpha : {0.8, 1.5, 4.0}) {
    for (double rho : {0.0, 1.0, 13.0}) {
      const HkParams p{alpha, 1.7, std::sqrt(rho * 1.7), 0.0};
      CAPTURE(alpha);
      CAPTURE(rho);
      CHECK(rel_err(hk_moment(2, p), 1.0 + scintillation_index(p)) < 1e-6);
      const double mean = p.b0 + p.a_det * p.a_det;
      for (int n : {2, 3, 4}) {
        CAPTURE(n);
        CHECK(rel_err(hk_moment(n, p), raw_moment(n, p) / std::pow(mean, n)) < 1e-8);
      }
    }
  }
}

TEST_CASE("sample_field: mean and scintillation index within 3 standard errors") {
  const HkParams p{2.0, 2.0, 2.0, 0.7};
  const auto v = sample_intensities(p, 11, 1000000);
  const auto m = summarize(v);
  CHECK(std::abs(m.mean - p.b0 * (1.0 + p.rho())) < 3.0 * m.se);

  // Delta method for SI = E{I^2}/E{I}^2 - 1 using the sample covariance of (I, I^2).
  const double n = static_cast<double>(v.size());
  double s1 = 0.0, s2 = 0.0;
  for (double x : v) {
    s1 += x;
    s2 += x * x;
  }
  const double e1 = s1 / n;
  const double e2 = s2 / n;
  double v11 = 0.0, v12 = 0.0, v22 = 0.0;
  for (double x : v) {
    const double d1 = x - e1;
    const double d2 = x * x - e2;
    v11 += d1 * d1;
    v12 += d1 * d2;
    v22 += d2 * d2;
  }
  v11 /= n - 1.0;
  v12 /= n - 1.0;
  v22 /= n - 1.0;
  const double g1 = -2.0 * e2 / (e1 * e1 * e1);
  const double g2 = 1.0 / (e1 * e1);
  const double se = std::sqrt((g1 * g1 * v11 + 2.0 * g1 * g2 * v12 + g2 * g2 * v22) / n);
  const double si = e2 / (e1 * e1) - 1.0;
  CHECK(std::abs(si - scintillation_index(p)) < 3.0 * se);
}

TEST_CASE("sample_field: huge alpha with A = 0 gives exponential intensity (KS)") {
  const HkParams p{1e6, 1.5, 0.0, 0.0};
  auto v = sample_intensities(p, 12, 100000);
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double cdf = 1.0 - std::exp(-v[k] / p.b0);
    d = std::max({d, std::abs(cdf - k / n), std::abs((k + 1.0) / n - cdf)});
  }
  const double p_value = kolmogorov_tail(std::sqrt(n) * d);
  CAPTURE(d);
  CHECK(p_value > 0.01);
}

TEST_CASE("sample_field: chi-square goodness of fit against hk_pdf") {
  for (const HkParams& p : {HkParams{2.0, 2.0, 2.0, 0.0}, HkParams{0.8, 1.0, 1.0, 1.0}, HkParams{4.0, 1.0, 3.6, 0.0}}) {
    const auto pilot = sample_intensities(p, 99, 20000);
    const auto edges = testing::quantile_edges(pilot, 40);
    const auto v = sample_intensities(p, 13, 1000000);
    const auto r = testing::chi_square_gof(v, [&](double i) { return i < 1e-300 ? 0.0 : hk_pdf(i, p); }, edges);
    CAPTURE(p.alpha);
    CAPTURE(r.statistic);
    CHECK(r.p_value > 0.01);
  }
}

TEST_CASE("sample_mixing: gamma with mean b0") {
  const HkParams p{1.5, 3.0, 0.0, 0.0};
  Rng rng = make_stream(5, {});
  std::vector<double> v(200000);
  for (auto& x : v) x = sample_mixing(p, rng);
  const auto m = summarize(v);
  CHECK(std::abs(m.mean - p.b0) < 3.0 * m.se);
}
