#pragma once

// Uncoded OSM error probabilities and the coherent MRC / Alamouti baselines.

#include <functional>
#include <span>
#include <vector>

#include "osmfso/mgf.hpp"
#include "osmfso/turbulence.hpp"

namespace osmfso {

/// Bit labelling of transmitter indices. Natural binary is the default.
enum class Labeling { natural, gray };

enum class ApepMethod { exact, chiani, asymptotic };

/// Transmitter count, aperture count and the |Delta|^2 parameters of every
/// transmitter pair at every aperture. Pair accessors take 0-based indices.
class OsmScenario {
 public:
  /// Builds all pair parameters from per-link H-K parameters, links[m * n_rx + n].
  static OsmScenario from_links(int m_tx, int n_rx, std::span<const HkParams> links);
  /// Two transmitters with explicit per-aperture pair parameters.
  static OsmScenario two_tx(std::vector<PairDeltaParams> branches);
  /// Every pair at every aperture shares the same parameters.
  static OsmScenario uniform(int m_tx, int n_rx, const PairDeltaParams& p);

  int m_tx() const noexcept { return m_tx_; }
  int n_rx() const noexcept { return n_rx_; }
  int bits_per_symbol() const noexcept;

  /// Per-aperture parameters of |h_{m1} - h_{m2}|^2, m1 != m2 (symmetric).
  std::span<const PairDeltaParams> branches(int m1, int m2) const;

 private:
  OsmScenario(int m_tx, int n_rx);
  std::size_t pair_index(int m1, int m2) const;

  int m_tx_;
  int n_rx_;
  std::vector<PairDeltaParams> pairs_;  // [pair_index][n]
};

/// Ordered SNR points (linear mu), strictly increasing.
class SnrGrid {
 public:
  static SnrGrid from_db(std::vector<double> db);
  /// start, start + step, ... up to stop (inclusive within step/1e6).
  static SnrGrid db_range(double start, double stop, double step);

  std::size_t size() const noexcept { return db_.size(); }
  bool empty() const noexcept { return db_.empty(); }
  double db(std::size_t i) const { return db_.at(i); }
  double linear(std::size_t i) const;
  const std::vector<double>& db_values() const noexcept { return db_; }

 private:
  std::vector<double> db_;
};

double db_to_linear(double db);

/// Q(sqrt(mu * frob_sq / 4)).
double conditional_pep(double mu, double frob_sq);

/// (1/pi) int_0^{pi/2} prod_n M_n(mu / (8 sin^2 theta)) dtheta.
double apep_exact(double mu, std::span<const PairDeltaParams> branches, double rel_tol = specfun::kDefaultRelTol);

/// (1/12) prod_n M_n(mu/8) + (1/4) prod_n M_n(mu/6).
double apep_chiani(double mu, std::span<const PairDeltaParams> branches);

/// 2^{N-1} Gamma(N+1/2) / (sqrt(pi) Gamma(N+1)) (prod_n c_n) (mu/4)^{-N}.
double abep_asymptotic(double mu, std::span<const PairDeltaParams> branches);

double apep(double mu, std::span<const PairDeltaParams> branches, ApepMethod method);

/// Hamming distance between the labels (m1 - 1) and (m2 - 1); transmitters are numbered 1..m_tx.
int n_b(int m1, int m2, int m_tx, Labeling labeling = Labeling::natural);

/// M = 2: the APEP itself (exact ABEP). M > 2: union bound
/// (1/(M log2 M)) sum_{m1} sum_{m2 != m1} N_b(m1, m2) APEP(m1 -> m2).
double abep_osm(double mu, const OsmScenario& scenario, ApepMethod method = ApepMethod::exact,
                Labeling labeling = Labeling::natural);

/// MGF of a K-distributed intensity with mean b0 (Whittaker form with b0 -> b0/2).
double intensity_mgf_k(double s, double alpha, double b0);

/// Coherent DPSK with N-branch MRC over i.i.d. K fading: (1/2) prod_n M_I(mu).
double mrc_abep_dpsk(double mu, double alpha, double b0, int n_rx);

/// Alamouti BPSK: (1/pi) int_0^{pi/2} prod_n M_I(mu / sin^2 theta) dtheta.
double alamouti_abep_bpsk(double mu, double alpha, double b0, int n_links);

namespace detail {

/// (1/pi) int_0^{pi/2} kernel(exp(log_d(theta))) dtheta. Shared by the uncoded APEP
/// and the coded transfer-function bound so that both see identical D(theta) values.
double theta_average(const std::function<double(double)>& log_d, const std::function<double(double)>& kernel,
                     double rel_tol);

/// Tolerance used for MGF evaluations nested inside a theta integral of tolerance rel_tol.
double inner_tolerance(double rel_tol);

}  // namespace detail

}  // namespace osmfso
