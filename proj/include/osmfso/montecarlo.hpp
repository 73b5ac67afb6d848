#pragma once

// Monte Carlo oracles: symbol-level OSM simulation with ML detection,
// semi-analytic SC / MRC / Alamouti baselines, and calibration experiments.
//
// Conventions shared by every simulator here:
//  * y = sqrt(mu) h_l + z with z having per-real-component variance 1, which is
//    the convention under which the ML pairwise error is Q(sqrt(mu |h1-h2|^2 / 4)).
//  * For each receive aperture the diffuse power b_n is drawn once per symbol and
//    shared by all transmit links into that aperture.
//  * The transmit symbol is fixed to 1 (space-shift keying).
//
// Determinism: work is cut into fixed-size blocks; block k of SNR point i uses the
// stream derive_seed(seed, {i, k}). Results are reduced in block order and the
// stopping rule is checked only between fixed batches of blocks, so the output is
// a function of (config, seed) alone, regardless of thread count.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "osmfso/perf.hpp"
#include "osmfso/rng.hpp"
#include "osmfso/turbulence.hpp"

namespace osmfso {

inline constexpr std::uint64_t kDefaultSeed = 20130917;

enum class Scheme { osm, sc_dpsk, mrc_dpsk, alamouti_bpsk };

/// serial runs the reference loop; parallel runs the same blocks under OpenMP.
enum class Execution { serial, parallel };

struct SimConfig {
  int m_tx = 2;
  int n_rx = 1;
  /// links[m * n_rx + n]; m_tx * n_rx entries.
  std::vector<HkParams> links;
  SnrGrid snr_grid = SnrGrid::from_db({0.0});
  std::uint64_t seed = kDefaultSeed;
  std::int64_t max_symbols = 10'000'000;
  std::int64_t target_errors = 200;
  Scheme scheme = Scheme::osm;
  Labeling labeling = Labeling::natural;

  void validate() const;
  const HkParams& link(int m, int n) const { return links.at(static_cast<std::size_t>(m) * n_rx + n); }
};

struct BerEstimate {
  double snr_db = 0.0;
  std::int64_t errors = 0;   ///< bit errors (0 for semi-analytic estimates)
  std::int64_t trials = 0;   ///< bits for symbol simulation, channel draws for semi-analytic
  std::int64_t symbols = 0;
  double ber = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double std_error = 0.0;
  bool budget_exhausted = false;  ///< target_errors not reached within max_symbols
  bool semi_analytic = false;
};

/// Complex channel matrix, n_rx rows by m_tx columns.
class ChannelMatrix {
 public:
  ChannelMatrix(int n_rx, int m_tx) : rows_(n_rx), cols_(m_tx), data_(static_cast<std::size_t>(n_rx) * m_tx) {}

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::complex<double>& operator()(int n, int m) { return data_[static_cast<std::size_t>(m) * rows_ + n]; }
  const std::complex<double>& operator()(int n, int m) const {
    return data_[static_cast<std::size_t>(m) * rows_ + n];
  }
  std::span<const std::complex<double>> column(int m) const {
    return std::span<const std::complex<double>>(data_).subspan(static_cast<std::size_t>(m) * rows_, rows_);
  }

 private:
  int rows_;
  int cols_;
  std::vector<std::complex<double>> data_;
};

/// argmin_l || y - sqrt(mu) h_l ||^2, ties resolved to the lowest index.
int detect_osm(std::span<const std::complex<double>> y, const ChannelMatrix& h, double mu);

/// Wilson score interval for errors / trials.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double confidence = 0.95);

/// Symbol-level OSM simulation, one estimate per SNR point.
std::vector<BerEstimate> simulate_osm(const SimConfig& config, Execution exec = Execution::parallel);

/// Semi-analytic baselines over K-distributed intensities (every link must have a_det == 0).
/// The diversity branches are all m_tx * n_rx links; max_symbols channel draws per point.
std::vector<BerEstimate> simulate_baseline(const SimConfig& config, Execution exec = Execution::parallel);

/// Symbol simulation over a fixed channel matrix (calibrates the noise convention).
BerEstimate simulate_fixed_channel(const ChannelMatrix& h, double mu, std::int64_t symbols, std::uint64_t seed,
                                   Execution exec = Execution::parallel);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// E{exp(-s |h_1 - h_2|^2)} from compound samples of two links sharing one gamma draw.
std::vector<MeanEstimate> estimate_mgf_delta(const HkParams& link1, const HkParams& link2,
                                             std::span<const double> s_values, std::int64_t samples,
                                             std::uint64_t seed, Execution exec = Execution::parallel);

/// count intensity samples |h|^2 of one H-K link.
std::vector<double> sample_intensities(const HkParams& p, std::int64_t count, std::uint64_t seed,
                                       Execution exec = Execution::parallel);

}  // namespace osmfso
