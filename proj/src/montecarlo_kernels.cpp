#include "montecarlo_kernels.hpp"

#include <cmath>
#include <random>

#include "osmfso/specfun.hpp"

namespace osmfso::kernels {

OsmLinks OsmLinks::from_config(const SimConfig& config) {
  OsmLinks out;
  out.m_tx = config.m_tx;
  out.n_rx = config.n_rx;
  out.labeling = config.labeling;
  out.mean.reserve(config.links.size());
  for (const auto& l : config.links) out.mean.push_back(l.mean_field());
  for (int n = 0; n < config.n_rx; ++n) {
    out.alpha.push_back(config.link(0, n).alpha);
    out.b0.push_back(config.link(0, n).b0);
  }
  return out;
}

Tally osm_block(const OsmLinks& links, double mu, std::int64_t count, std::uint64_t key) {
  Rng rng(key);
  const int m_tx = links.m_tx;
  const int n_rx = links.n_rx;
  std::vector<std::gamma_distribution<double>> mixing;
  for (int n = 0; n < n_rx; ++n) mixing.emplace_back(links.alpha[n], links.b0[n] / links.alpha[n]);
  std::normal_distribution<double> unit;
  std::uniform_int_distribution<int> pick(0, m_tx - 1);
  const double amp = std::sqrt(mu);

  ChannelMatrix h(n_rx, m_tx);
  std::vector<std::complex<double>> y(n_rx);
  Tally t;
  for (std::int64_t i = 0; i < count; ++i) {
    for (int n = 0; n < n_rx; ++n) {
      const double sigma = std::sqrt(0.5 * mixing[n](rng));
      for (int m = 0; m < m_tx; ++m) {
        const double re = unit(rng);
        const double im = unit(rng);
        h(n, m) = links.mean[m * n_rx + n] + std::complex<double>(sigma * re, sigma * im);
      }
    }
    const int sent = pick(rng);
    for (int n = 0; n < n_rx; ++n) {
      const double re = unit(rng);
      const double im = unit(rng);
      y[n] = amp * h(n, sent) + std::complex<double>(re, im);
    }
    const int decided = detect_osm(y, h, mu);
    if (decided != sent) t.errors += n_b(sent + 1, decided + 1, m_tx, links.labeling);
  }
  t.symbols = count;
  return t;
}

Tally baseline_block(std::span<const HkParams> branches, Scheme scheme, double mu, std::int64_t count,
                     std::uint64_t key) {
  Rng rng(key);
  Tally t;
  for (std::int64_t i = 0; i < count; ++i) {
    double total = 0.0;
    double best = 0.0;
    for (const auto& p : branches) {
      const double intensity = std::norm(sample_field(p, rng));
      total += intensity;
      best = std::max(best, intensity);
    }
    double pe = 0.0;
    switch (scheme) {
      case Scheme::mrc_dpsk:
        pe = 0.5 * std::exp(-mu * total);
        break;
      case Scheme::sc_dpsk:
        pe = 0.5 * std::exp(-mu * best);
        break;
      case Scheme::alamouti_bpsk:
        pe = specfun::gauss_q(std::sqrt(2.0 * mu * total));
        break;
      case Scheme::osm:
        break;
    }
    t.sum += pe;
    t.sum_sq += pe * pe;
  }
  t.symbols = count;
  return t;
}

Tally fixed_channel_block(const ChannelMatrix& h, double mu, std::int64_t count, std::uint64_t key) {
  Rng rng(key);
  const int m_tx = h.cols();
  const int n_rx = h.rows();
  std::normal_distribution<double> unit;
  std::uniform_int_distribution<int> pick(0, m_tx - 1);
  const double amp = std::sqrt(mu);
  std::vector<std::complex<double>> y(n_rx);
  Tally t;
  for (std::int64_t i = 0; i < count; ++i) {
    const int sent = pick(rng);
    for (int n = 0; n < n_rx; ++n) {
      const double re = unit(rng);
      const double im = unit(rng);
      y[n] = amp * h(n, sent) + std::complex<double>(re, im);
    }
    const int decided = detect_osm(y, h, mu);
    if (decided != sent) t.errors += n_b(sent + 1, decided + 1, m_tx);
  }
  t.symbols = count;
  return t;
}

void mgf_block(const HkParams& link1, const HkParams& link2, std::span<const double> s_values, std::int64_t count,
               std::uint64_t key, std::span<double> sums, std::span<double> sums_sq) {
  Rng rng(key);
  for (std::int64_t i = 0; i < count; ++i) {
    const double b = sample_mixing(link1, rng);
    const auto h1 = sample_field_given_b(link1, b, rng);
    const auto h2 = sample_field_given_b(link2, b, rng);
    const double x = std::norm(h1 - h2);
    for (std::size_t k = 0; k < s_values.size(); ++k) {
      const double v = std::exp(-s_values[k] * x);
      sums[k] += v;
      sums_sq[k] += v * v;
    }
  }
}

void intensity_block(const HkParams& p, std::int64_t count, std::uint64_t key, std::span<double> out) {
  Rng rng(key);
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::norm(sample_field(p, rng));
}

}  // namespace osmfso::kernels
