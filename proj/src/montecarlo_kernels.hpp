#pragma once

// Block kernels behind the Monte Carlo drivers. Every kernel is a pure function
// of (inputs, block size, stream key); the drivers decide serial vs OpenMP.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "osmfso/montecarlo.hpp"

namespace osmfso::kernels {

inline constexpr std::int64_t kBlockSymbols = 4096;
inline constexpr std::int64_t kBlocksPerBatch = 16;

struct Tally {
  std::int64_t errors = 0;
  std::int64_t symbols = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  Tally& operator+=(const Tally& o) {
    errors += o.errors;
    symbols += o.symbols;
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
  }
};

/// Flattened OSM link description.
struct OsmLinks {
  int m_tx = 2;
  int n_rx = 1;
  std::vector<std::complex<double>> mean;  // [m * n_rx + n]
  std::vector<double> alpha;               // per aperture
  std::vector<double> b0;                  // per aperture
  Labeling labeling = Labeling::natural;

  static OsmLinks from_config(const SimConfig& config);
};

Tally osm_block(const OsmLinks& links, double mu, std::int64_t count, std::uint64_t key);

Tally baseline_block(std::span<const HkParams> branches, Scheme scheme, double mu, std::int64_t count,
                     std::uint64_t key);

Tally fixed_channel_block(const ChannelMatrix& h, double mu, std::int64_t count, std::uint64_t key);

/// Adds exp(-s |Delta|^2) and its square into sums / sums_sq, one slot per s.
void mgf_block(const HkParams& link1, const HkParams& link2, std::span<const double> s_values, std::int64_t count,
               std::uint64_t key, std::span<double> sums, std::span<double> sums_sq);

void intensity_block(const HkParams& p, std::int64_t count, std::uint64_t key, std::span<double> out);

}  // namespace osmfso::kernels
