#include "osmfso/perf.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "osmfso/errors.hpp"

namespace osmfso {

namespace {

constexpr double kPi = std::numbers::pi;

void check_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("SNR mu must be finite and > 0");
}

void check_branches(std::span<const PairDeltaParams> branches) {
  if (branches.empty()) throw ValidationError("at least one receive aperture is required");
  for (const auto& b : branches) b.validate();
}

}  // namespace

// ---------------------------------------------------------------------------
// OsmScenario

OsmScenario::OsmScenario(int m_tx, int n_rx) : m_tx_(m_tx), n_rx_(n_rx) {
  if (m_tx < 2 || !std::has_single_bit(static_cast<unsigned>(m_tx)))
    throw ValidationError("OsmScenario: m_tx must be a power of two >= 2, got " + std::to_string(m_tx));
  if (n_rx < 1) throw ValidationError("OsmScenario: n_rx must be >= 1, got " + std::to_string(n_rx));
  pairs_.resize(static_cast<std::size_t>(m_tx) * (m_tx - 1) / 2 * n_rx);
}

std::size_t OsmScenario::pair_index(int m1, int m2) const {
  if (m1 == m2 || m1 < 0 || m2 < 0 || m1 >= m_tx_ || m2 >= m_tx_)
    throw std::out_of_range("OsmScenario: invalid transmitter pair");
  if (m1 > m2) std::swap(m1, m2);
  // Row-major index into the strict upper triangle.
  return static_cast<std::size_t>(m1) * (2 * m_tx_ - m1 - 1) / 2 + (m2 - m1 - 1);
}

OsmScenario OsmScenario::from_links(int m_tx, int n_rx, std::span<const HkParams> links) {
  OsmScenario sc(m_tx, n_rx);
  if (links.size() != static_cast<std::size_t>(m_tx) * n_rx)
    throw ValidationError("OsmScenario: expected m_tx * n_rx link parameter sets");
  for (int m1 = 0; m1 < m_tx; ++m1) {
    for (int m2 = m1 + 1; m2 < m_tx; ++m2) {
      const std::size_t base = sc.pair_index(m1, m2) * n_rx;
      for (int n = 0; n < n_rx; ++n)
        sc.pairs_[base + n] = delta_params(links[m1 * n_rx + n], links[m2 * n_rx + n]);
    }
  }
  return sc;
}

OsmScenario OsmScenario::two_tx(std::vector<PairDeltaParams> branches) {
  check_branches(branches);
  OsmScenario sc(2, static_cast<int>(branches.size()));
  sc.pairs_ = std::move(branches);
  return sc;
}

OsmScenario OsmScenario::uniform(int m_tx, int n_rx, const PairDeltaParams& p) {
  p.validate();
  OsmScenario sc(m_tx, n_rx);
  std::fill(sc.pairs_.begin(), sc.pairs_.end(), p);
  return sc;
}

int OsmScenario::bits_per_symbol() const noexcept { return std::countr_zero(static_cast<unsigned>(m_tx_)); }

std::span<const PairDeltaParams> OsmScenario::branches(int m1, int m2) const {
  return std::span<const PairDeltaParams>(pairs_).subspan(pair_index(m1, m2) * n_rx_, n_rx_);
}

// ---------------------------------------------------------------------------
// SnrGrid

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SnrGrid SnrGrid::from_db(std::vector<double> db) {
  if (db.empty()) throw ValidationError("SnrGrid: grid is empty");
  for (std::size_t i = 0; i < db.size(); ++i) {
    if (!std::isfinite(db[i])) throw ValidationError("SnrGrid: non-finite SNR value");
    if (i > 0 && !(db[i] > db[i - 1])) throw ValidationError("SnrGrid: SNR values must be strictly increasing");
  }
  SnrGrid g;
  g.db_ = std::move(db);
  return g;
}

SnrGrid SnrGrid::db_range(double start, double stop, double step) {
  if (!(step > 0.0)) throw ValidationError("SnrGrid: step must be > 0");
  if (!(stop >= start)) throw ValidationError("SnrGrid: stop must be >= start");
  std::vector<double> db;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-6));
  for (long i = 0; i <= count; ++i) db.push_back(start + static_cast<double>(i) * step);
  return from_db(std::move(db));
}

double SnrGrid::linear(std::size_t i) const { return db_to_linear(db(i)); }

// ---------------------------------------------------------------------------
// Error probabilities

double conditional_pep(double mu, double frob_sq) {
  check_mu(mu);
  if (frob_sq < 0.0) throw DomainError("conditional_pep: frob_sq must be >= 0");
  return specfun::gauss_q(std::sqrt(mu * frob_sq / 4.0));
}

double detail::inner_tolerance(double rel_tol) { return std::max(rel_tol * 1e-2, 1e-13); }

double detail::theta_average(const std::function<double(double)>& log_d,
                             const std::function<double(double)>& kernel, double rel_tol) {
  auto integrand = [&](double theta) { return kernel(std::exp(log_d(theta))); };
  specfun::IntegrationOptions opts;
  opts.rel_tol = rel_tol;
  return specfun::integrate_finite(integrand, 0.0, kPi / 2.0, opts).value / kPi;
}

double apep_exact(double mu, std::span<const PairDeltaParams> branches, double rel_tol) {
  check_mu(mu);
  check_branches(branches);
  const double inner = detail::inner_tolerance(rel_tol);
  auto log_d = [&](double theta) {
    const double sn = std::sin(theta);
    return log_mgf_product(mu / (8.0 * sn * sn), branches, inner);
  };
  return detail::theta_average(log_d, [](double d) { return d; }, rel_tol);
}

double apep_chiani(double mu, std::span<const PairDeltaParams> branches) {
  check_mu(mu);
  check_branches(branches);
  return std::exp(log_mgf_product(mu / 8.0, branches)) / 12.0 +
         0.25 * std::exp(log_mgf_product(mu / 6.0, branches));
}

double abep_asymptotic(double mu, std::span<const PairDeltaParams> branches) {
  check_mu(mu);
  check_branches(branches);
  const double n = static_cast<double>(branches.size());
  double log_c = 0.0;
  for (const auto& b : branches) log_c += std::log(asym_coeff(b));
  const double log_pref = (n - 1.0) * std::numbers::ln2 + std::lgamma(n + 0.5) - 0.5 * std::log(kPi) -
                          std::lgamma(n + 1.0);
  return std::exp(log_pref + log_c - n * std::log(mu / 4.0));
}

double apep(double mu, std::span<const PairDeltaParams> branches, ApepMethod method) {
  switch (method) {
    case ApepMethod::exact:
      return apep_exact(mu, branches);
    case ApepMethod::chiani:
      return apep_chiani(mu, branches);
    case ApepMethod::asymptotic:
      return abep_asymptotic(mu, branches);
  }
  throw std::invalid_argument("apep: unknown method");
}

int n_b(int m1, int m2, int m_tx, Labeling labeling) {
  if (m1 < 1 || m2 < 1 || m1 > m_tx || m2 > m_tx)
    throw std::out_of_range("n_b: transmitter index must lie in [1, " + std::to_string(m_tx) + "]");
  auto label = [labeling](unsigned m) { return labeling == Labeling::gray ? m ^ (m >> 1) : m; };
  return std::popcount(label(static_cast<unsigned>(m1 - 1)) ^ label(static_cast<unsigned>(m2 - 1)));
}

double abep_osm(double mu, const OsmScenario& scenario, ApepMethod method, Labeling labeling) {
  const int m = scenario.m_tx();
  if (m == 2) return apep(mu, scenario.branches(0, 1), method);
  // APEP(m1 -> m2) == APEP(m2 -> m1), so each unordered pair is evaluated once.
  double acc = 0.0;
  for (int m1 = 0; m1 < m; ++m1) {
    for (int m2 = m1 + 1; m2 < m; ++m2) {
      const int bits = n_b(m1 + 1, m2 + 1, m, labeling);
      if (bits == 0) continue;
      acc += 2.0 * bits * apep(mu, scenario.branches(m1, m2), method);
    }
  }
  return acc / (static_cast<double>(m) * scenario.bits_per_symbol());
}

double intensity_mgf_k(double s, double alpha, double b0) { return mgf_delta_k(s, alpha, 0.5 * b0); }

double mrc_abep_dpsk(double mu, double alpha, double b0, int n_rx) {
  check_mu(mu);
  if (n_rx < 1) throw ValidationError("mrc_abep_dpsk: n_rx must be >= 1");
  return 0.5 * std::pow(intensity_mgf_k(mu, alpha, b0), n_rx);
}

double alamouti_abep_bpsk(double mu, double alpha, double b0, int n_links) {
  check_mu(mu);
  if (n_links < 1) throw ValidationError("alamouti_abep_bpsk: n_links must be >= 1");
  const double inner = detail::inner_tolerance(specfun::kDefaultRelTol);
  auto log_d = [&](double theta) {
    const double sn = std::sin(theta);
    const double s = mu / (sn * sn);
    return n_links * std::log(mgf_delta_k(s, alpha, 0.5 * b0, inner));
  };
  return detail::theta_average(log_d, [](double d) { return d; }, specfun::kDefaultRelTol);
}

}  // namespace osmfso
