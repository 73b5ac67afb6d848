#include "osmfso/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "osmfso/errors.hpp"

namespace osmfso::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077720326071630, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod abscissae.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;  // integral of |f|, used for the round-off floor
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double lo = f(center - dx);
    const double hi = f(center + dx);
    f1[j] = lo;
    f2[j] = hi;
    resk += kWgk[j] * (lo + hi);
    resabs += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) resg += kWg[j / 2] * (lo + hi);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, value, err, resabs};
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " is not finite");
}

}  // namespace

QuadratureRule gcq_nodes(int points) {
  if (points < 1) throw std::invalid_argument("gcq_nodes: number of points must be >= 1");
  QuadratureRule rule;
  rule.kind = QuadratureKind::gauss_chebyshev_semi_infinite;
  rule.nodes.reserve(points);
  rule.weights.reserve(points);
  const double J = static_cast<double>(points);
  for (int j = 1; j <= points; ++j) {
    const double x = (2.0 * j - 1.0) / (2.0 * J) * kPi;
    const double arg = kPi / 4.0 * std::cos(x) + kPi / 4.0;
    const double c = std::cos(arg);
    rule.nodes.push_back(std::tan(arg));
    rule.weights.push_back(kPi * kPi * std::sin(x) / (4.0 * J * c * c));
  }
  return rule;
}

double bessel_i0_scaled(double x) {
  check_finite(x, "bessel_i0 argument");
  const double ax = std::abs(x);
  if (ax <= 30.0) {
    // Power series; every term is positive so there is no cancellation.
    const double q = 0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-ax);
  }
  // Large-argument expansion: terms (2k-1)^2 / (8 k x) ratio, truncated at the smallest term.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * ax);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / std::sqrt(2.0 * kPi * ax);
}

double bessel_i0(double x) {
  check_finite(x, "bessel_i0 argument");
  if (std::abs(x) > 700.0)
    throw OverflowError("bessel_i0: |x| > 700 overflows; use bessel_i0_scaled");
  return bessel_i0_scaled(x) * std::exp(std::abs(x));
}

double bessel_k(double order, double x) {
  check_finite(order, "bessel_k order");
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be > 0");
  if (x > 600.0) return bessel_k_scaled(order, x) * std::exp(-x);
  const double v = std::cyl_bessel_k(std::abs(order), x);
  if (!std::isfinite(v)) throw OverflowError("bessel_k: result exceeds double range");
  return v;
}

double log_bessel_k(double order, double x) {
  try {
    return std::log(bessel_k_scaled(order, x)) - x;
  } catch (const OverflowError&) {
    const double nu = std::abs(order);
    return std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
  }
}

double bessel_k_scaled(double order, double x) {
  check_finite(order, "bessel_k order");
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be > 0");
  if (x <= 600.0) {
    const double v = std::cyl_bessel_k(std::abs(order), x);
    if (!std::isfinite(v)) throw OverflowError("bessel_k: result exceeds double range");
    return v * std::exp(x);
  }
  // sqrt(pi/2x) sum_k prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! (8x)^k)
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::sqrt(kPi / (2.0 * x));
}

namespace {

double log_whittaker_integral(double p, double q, double x, double rel_tol, double& prefactor_log) {
  if (!(x > 0.0)) throw DomainError("whittaker_w: argument must be > 0");
  double qq = q;
  if (!(0.5 - p + qq > 0.0)) {
    qq = -q;  // W_{p,q} = W_{p,-q}
    if (!(0.5 - p + qq > 0.0))
      throw DomainError("whittaker_w: integral representation needs 1/2 - p + |q| > 0");
  }
  const double a = qq - p + 0.5;
  const double c = qq + p - 0.5;
  const double lg = std::lgamma(a);
  auto integrand = [a, c, x, lg](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-t + (a - 1.0) * std::log(t) + c * std::log1p(t / x) - lg);
  };
  IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  opts.scale = std::max(1.0, a);
  const double integral = integrate_semi_infinite(integrand, opts).value;
  prefactor_log = -0.5 * x + p * std::log(x);
  return std::log(integral);
}

}  // namespace

double whittaker_w(double p, double q, double x, double rel_tol) {
  double prefactor_log = 0.0;
  const double log_integral = log_whittaker_integral(p, q, x, rel_tol, prefactor_log);
  return std::exp(prefactor_log + log_integral);
}

double log_whittaker_w(double p, double q, double x, double rel_tol) {
  double prefactor_log = 0.0;
  const double log_integral = log_whittaker_integral(p, q, x, rel_tol, prefactor_log);
  return prefactor_log + log_integral;
}

double gauss_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double chiani_q(double x) {
  if (!(x >= 0.0)) throw DomainError("chiani_q: argument must be >= 0");
  const double x2 = x * x;
  return std::exp(-0.5 * x2) / 12.0 + 0.25 * std::exp(-2.0 * x2 / 3.0);
}

IntegrationResult integrate_finite(const Integrand& f, double a, double b, const IntegrationOptions& opts) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a < b");
  if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0))
    throw std::invalid_argument("integrate_finite: need a positive tolerance");

  std::priority_queue<Segment> heap;
  Segment first = kronrod21(f, a, b);
  double total = first.value;
  double total_err = first.error;
  double total_abs = first.abs_value;
  heap.push(first);
  int intervals = 1;

  auto target = [&] {
    return std::max({opts.abs_tol, opts.rel_tol * std::abs(total), 50.0 * kEps * total_abs});
  };

  // Intervals too narrow to split keep their estimate and stop competing.
  double frozen_value = 0.0;
  double frozen_err = 0.0;
  while (total_err > target()) {
    if (!std::isfinite(total)) throw ConvergenceError("integrate: non-finite integrand value", total, total_err);
    if (intervals >= opts.max_intervals) {
      throw ConvergenceError("integrate: refinement cap of " + std::to_string(opts.max_intervals) +
                                 " intervals reached",
                             total, total_err);
    }
    if (heap.empty()) {
      throw ConvergenceError("integrate: interval width reached machine precision", total, total_err);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) || (worst.b - worst.a) < 4.0 * kEps * std::abs(mid)) {
      frozen_value += worst.value;
      frozen_err += worst.error;
      continue;
    }
    Segment left = kronrod21(f, worst.a, mid);
    Segment right = kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Re-sum to remove drift from the running updates.
  double sum = frozen_value;
  double err = frozen_err;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sum, err, intervals};
}

IntegrationResult integrate_semi_infinite(const Integrand& f, const IntegrationOptions& opts) {
  if (!(opts.scale > 0.0)) throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
  const double c = opts.scale;
  // Head (0, c] as is; tail [c, inf) through t = c / u so slow algebraic decay
  // turns into an endpoint singularity at u = 0, where doubles are dense.
  auto tail = [&f, c](double u) {
    if (u <= 0.0) return 0.0;
    const double t = c / u;
    if (!std::isfinite(t)) return 0.0;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v * c / (u * u);
  };
  const IntegrationResult head = integrate_finite(f, 0.0, c, opts);
  const IntegrationResult rest = integrate_finite(tail, 0.0, 1.0, opts);
  return {head.value + rest.value, head.abs_error + rest.abs_error, head.intervals + rest.intervals};
}

}  // namespace osmfso::specfun
