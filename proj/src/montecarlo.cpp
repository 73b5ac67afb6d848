#include "osmfso/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "montecarlo_kernels.hpp"
#include "osmfso/errors.hpp"
#include "osmfso/parallel.hpp"

namespace osmfso {

namespace {

using kernels::Tally;

template <typename F>
auto map_blocks(Execution exec, std::size_t n, F&& f) {
  return exec == Execution::parallel ? parallel_map(n, f) : serial_map(n, f);
}

/// Runs fixed-size blocks in batches until max_symbols is spent or (when
/// target_errors > 0) enough errors were counted. block_fn(count, key) -> Tally.
template <typename BlockFn>
Tally run_point(Execution exec, std::uint64_t seed, std::uint64_t point, std::int64_t max_symbols,
                std::int64_t target_errors, BlockFn&& block_fn) {
  Tally total;
  std::int64_t next_block = 0;
  while (total.symbols < max_symbols && (target_errors <= 0 || total.errors < target_errors)) {
    std::vector<std::pair<std::int64_t, std::int64_t>> batch;  // (block index, symbols)
    for (std::int64_t k = 0; k < kernels::kBlocksPerBatch; ++k) {
      const std::int64_t start = next_block * kernels::kBlockSymbols;
      if (start >= max_symbols) break;
      batch.emplace_back(next_block, std::min(kernels::kBlockSymbols, max_symbols - start));
      ++next_block;
    }
    const auto tallies = map_blocks(exec, batch.size(), [&](std::size_t i) {
      const auto [index, count] = batch[i];
      return block_fn(count, derive_seed(seed, {point, static_cast<std::uint64_t>(index)}));
    });
    for (const auto& t : tallies) total += t;
  }
  return total;
}

double z_for(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + 0.5 * confidence);
}

BerEstimate counted_estimate(double snr_db, const Tally& t, int bits_per_symbol, std::int64_t target_errors) {
  BerEstimate e;
  e.snr_db = snr_db;
  e.errors = t.errors;
  e.symbols = t.symbols;
  e.trials = t.symbols * bits_per_symbol;
  e.ber = static_cast<double>(e.errors) / static_cast<double>(e.trials);
  std::tie(e.ci_low, e.ci_high) = wilson_interval(e.errors, e.trials);
  e.std_error = std::sqrt(e.ber * (1.0 - e.ber) / static_cast<double>(e.trials));
  e.budget_exhausted = target_errors > 0 && e.errors < target_errors;
  return e;
}

}  // namespace

void SimConfig::validate() const {
  if (m_tx < 1 || n_rx < 1) throw ValidationError("SimConfig: m_tx and n_rx must be >= 1");
  if (links.size() != static_cast<std::size_t>(m_tx) * n_rx)
    throw ValidationError("SimConfig: expected " + std::to_string(m_tx * n_rx) + " link parameter sets, got " +
                          std::to_string(links.size()));
  for (const auto& l : links) l.validate();
  if (snr_grid.empty()) throw ValidationError("SimConfig: SNR grid is empty");
  if (max_symbols < 1000) throw ValidationError("SimConfig: max_symbols must be >= 1000");
  if (target_errors < 10) throw ValidationError("SimConfig: target_errors must be >= 10");
  if (scheme == Scheme::osm) {
    if (m_tx < 2 || !std::has_single_bit(static_cast<unsigned>(m_tx)))
      throw ValidationError("SimConfig: OSM needs m_tx to be a power of two >= 2");
    for (int n = 0; n < n_rx; ++n) {
      for (int m = 1; m < m_tx; ++m) {
        if (link(m, n).alpha != link(0, n).alpha || link(m, n).b0 != link(0, n).b0)
          throw ValidationError("SimConfig: links into aperture " + std::to_string(n) +
                                " must share alpha and b0 (one gamma draw per aperture)");
      }
    }
  } else {
    for (const auto& l : links) {
      if (l.a_det != 0.0) throw ValidationError("SimConfig: baseline schemes use the K model (a_det = 0)");
    }
  }
}

int detect_osm(std::span<const std::complex<double>> y, const ChannelMatrix& h, double mu) {
  if (static_cast<int>(y.size()) != h.rows())
    throw std::invalid_argument("detect_osm: y has " + std::to_string(y.size()) + " entries, H has " +
                                std::to_string(h.rows()) + " rows");
  const double amp = std::sqrt(mu);
  int best = 0;
  double best_metric = 0.0;
  for (int m = 0; m < h.cols(); ++m) {
    double metric = 0.0;
    for (int n = 0; n < h.rows(); ++n) metric += std::norm(y[n] - amp * h(n, m));
    if (m == 0 || metric < best_metric) {
      best = m;
      best_metric = metric;
    }
  }
  return best;
}

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double confidence) {
  if (trials < 1 || errors < 0 || errors > trials) throw std::invalid_argument("wilson_interval: need 0 <= errors <= trials, trials >= 1");
  const double z = z_for(confidence);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = errors == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

std::vector<BerEstimate> simulate_osm(const SimConfig& config, Execution exec) {
  if (config.scheme != Scheme::osm) throw ValidationError("simulate_osm: scheme must be osm");
  config.validate();
  const auto links = kernels::OsmLinks::from_config(config);
  const int bits = std::countr_zero(static_cast<unsigned>(config.m_tx));
  std::vector<BerEstimate> out;
  for (std::size_t i = 0; i < config.snr_grid.size(); ++i) {
    const double mu = config.snr_grid.linear(i);
    const Tally t = run_point(exec, config.seed, i, config.max_symbols, config.target_errors,
                              [&](std::int64_t count, std::uint64_t key) {
                                return kernels::osm_block(links, mu, count, key);
                              });
    out.push_back(counted_estimate(config.snr_grid.db(i), t, bits, config.target_errors));
  }
  return out;
}

std::vector<BerEstimate> simulate_baseline(const SimConfig& config, Execution exec) {
  if (config.scheme == Scheme::osm) throw ValidationError("simulate_baseline: scheme must be a baseline");
  config.validate();
  const double z = z_for(0.95);
  std::vector<BerEstimate> out;
  for (std::size_t i = 0; i < config.snr_grid.size(); ++i) {
    const double mu = config.snr_grid.linear(i);
    const Tally t = run_point(exec, config.seed, i, config.max_symbols, 0, [&](std::int64_t count, std::uint64_t key) {
      return kernels::baseline_block(config.links, config.scheme, mu, count, key);
    });
    BerEstimate e;
    e.snr_db = config.snr_grid.db(i);
    e.semi_analytic = true;
    e.symbols = t.symbols;
    e.trials = t.symbols;
    const double n = static_cast<double>(t.symbols);
    e.ber = t.sum / n;
    const double var = std::max(0.0, t.sum_sq / n - e.ber * e.ber) * n / (n - 1.0);
    e.std_error = std::sqrt(var / n);
    e.ci_low = std::max(0.0, e.ber - z * e.std_error);
    e.ci_high = e.ber + z * e.std_error;
    out.push_back(e);
  }
  return out;
}

BerEstimate simulate_fixed_channel(const ChannelMatrix& h, double mu, std::int64_t symbols, std::uint64_t seed,
                                   Execution exec) {
  if (h.cols() < 2 || !std::has_single_bit(static_cast<unsigned>(h.cols())))
    throw ValidationError("simulate_fixed_channel: number of transmitters must be a power of two >= 2");
  const Tally t = run_point(exec, seed, 0, symbols, 0, [&](std::int64_t count, std::uint64_t key) {
    return kernels::fixed_channel_block(h, mu, count, key);
  });
  return counted_estimate(10.0 * std::log10(mu), t, std::countr_zero(static_cast<unsigned>(h.cols())), 0);
}

std::vector<MeanEstimate> estimate_mgf_delta(const HkParams& link1, const HkParams& link2,
                                             std::span<const double> s_values, std::int64_t samples,
                                             std::uint64_t seed, Execution exec) {
  delta_params(link1, link2);  // validates the shared (alpha, b0) requirement
  if (samples < 2) throw std::invalid_argument("estimate_mgf_delta: need at least two samples");
  constexpr std::int64_t kBlock = 1 << 16;
  const std::size_t k = s_values.size();
  const auto n_blocks = static_cast<std::size_t>((samples + kBlock - 1) / kBlock);
  const auto partial = map_blocks(exec, n_blocks, [&](std::size_t b) {
    std::vector<double> acc(2 * k, 0.0);
    const std::int64_t count = std::min(kBlock, samples - static_cast<std::int64_t>(b) * kBlock);
    kernels::mgf_block(link1, link2, s_values, count, derive_seed(seed, {0, b}),
                       std::span<double>(acc).first(k), std::span<double>(acc).subspan(k));
    return acc;
  });
  std::vector<double> sums(k, 0.0);
  std::vector<double> sums_sq(k, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t j = 0; j < k; ++j) {
      sums[j] += acc[j];
      sums_sq[j] += acc[k + j];
    }
  }
  const double n = static_cast<double>(samples);
  std::vector<MeanEstimate> out;
  for (std::size_t j = 0; j < k; ++j) {
    const double mean = sums[j] / n;
    const double var = std::max(0.0, sums_sq[j] / n - mean * mean) * n / (n - 1.0);
    out.push_back({mean, std::sqrt(var / n), samples});
  }
  return out;
}

std::vector<double> sample_intensities(const HkParams& p, std::int64_t count, std::uint64_t seed, Execution exec) {
  p.validate();
  constexpr std::int64_t kBlock = 1 << 16;
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  const auto n_blocks = static_cast<std::size_t>((count + kBlock - 1) / kBlock);
  map_blocks(exec, n_blocks, [&](std::size_t b) {
    const std::int64_t start = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t len = std::min(kBlock, count - start);
    kernels::intensity_block(p, len, derive_seed(seed, {1, b}),
                             std::span<double>(out).subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(len)));
    return 0;
  });
  return out;
}

}  // namespace osmfso
