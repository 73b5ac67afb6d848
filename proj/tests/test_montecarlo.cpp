#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "doctest.h"
#include "osmfso/errors.hpp"
#include "osmfso/montecarlo.hpp"
#include "osmfso/specfun.hpp"
#include "test_support.hpp"

using namespace osmfso;
using testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<HkParams> fig1_links(int n_rx) {
  std::vector<HkParams> links;
  for (int n = 0; n < n_rx; ++n) links.push_back({2.0, 2.0, 2.0, kPi / 3.0});
  for (int n = 0; n < n_rx; ++n) links.push_back({2.0, 2.0, 1.0, kPi / 4.0});
  return links;
}

SimConfig osm_config(int n_rx, std::vector<double> db) {
  SimConfig c;
  c.m_tx = 2;
  c.n_rx = n_rx;
  c.links = fig1_links(n_rx);
  c.snr_grid = SnrGrid::from_db(std::move(db));
  return c;
}

SimConfig baseline_config(Scheme scheme, int m_tx, int n_rx, std::vector<double> db) {
  SimConfig c;
  c.scheme = scheme;
  c.m_tx = m_tx;
  c.n_rx = n_rx;
  c.links.assign(static_cast<std::size_t>(m_tx * n_rx), HkParams{1.5, 1.5, 0.0, 0.0});
  c.snr_grid = SnrGrid::from_db(std::move(db));
  c.max_symbols = 200'000;
  return c;
}

bool same(const BerEstimate& a, const BerEstimate& b) {
  return a.errors == b.errors && a.trials == b.trials && a.symbols == b.symbols && a.ber == b.ber &&
         a.ci_low == b.ci_low && a.ci_high == b.ci_high && a.std_error == b.std_error &&
         a.budget_exhausted == b.budget_exhausted;
}

}  // namespace

TEST_CASE("detect_osm: noiseless input, ties and dimensions") {
  ChannelMatrix h(2, 3);
  h(0, 0) = {1.0, 0.0};
  h(1, 0) = {0.0, 1.0};
  h(0, 1) = {-0.5, 0.2};
  h(1, 1) = {0.3, -1.1};
  h(0, 2) = {2.0, 2.0};
  h(1, 2) = {0.1, 0.0};
  const double mu = 7.0;
  for (int m = 0; m < 3; ++m) {
    std::vector<std::complex<double>> y{std::sqrt(mu) * h(0, m), std::sqrt(mu) * h(1, m)};
    CHECK(detect_osm(y, h, mu) == m);
  }

  // Midpoint between columns 0 and 1 is equidistant from both.
  ChannelMatrix g(1, 2);
  g(0, 0) = {1.0, 0.0};
  g(0, 1) = {-1.0, 0.0};
  std::vector<std::complex<double>> mid{{0.0, 0.5}};
  CHECK(detect_osm(mid, g, 4.0) == 0);
  ChannelMatrix twin(1, 4);
  for (int m = 0; m < 4; ++m) twin(0, m) = {0.5, 0.5};
  std::vector<std::complex<double>> any{{3.0, -1.0}};
  CHECK(detect_osm(any, twin, 2.0) == 0);

  std::vector<std::complex<double>> wrong{{0.0, 0.0}};
  CHECK_THROWS_AS(detect_osm(wrong, h, mu), std::invalid_argument);
}

TEST_CASE("wilson_interval") {
  CHECK(wilson_interval(0, 100).first == 0.0);
  CHECK(wilson_interval(0, 100).second > 0.0);
  CHECK(wilson_interval(100, 100).second == 1.0);
  CHECK(wilson_interval(100, 100).first < 1.0);

  const auto [low, high] = wilson_interval(50, 10'000);
  CHECK(low < 0.005);
  CHECK(high > 0.005);
  const double normal_width = 2.0 * 1.959963984540054 * std::sqrt(0.005 * 0.995 / 1e4);
  CHECK(rel_err(high - low, normal_width) < 0.02);

  // Wider at higher confidence, and contains the point estimate.
  for (std::int64_t e : {1, 7, 400, 999}) {
    const auto a = wilson_interval(e, 1000, 0.9);
    const auto b = wilson_interval(e, 1000, 0.99);
    const double p = e / 1000.0;
    CHECK(a.first <= p);
    CHECK(a.second >= p);
    CHECK(b.first < a.first);
    CHECK(b.second > a.second);
  }
  CHECK_THROWS_AS(wilson_interval(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(6, 5), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(-1, 5), std::invalid_argument);
}

TEST_CASE("fixed channel: detector error rate matches Q(sqrt(mu |h1 - h2|^2 / 4))") {
  struct Case {
    std::vector<std::complex<double>> h1, h2;
    double mu;
  };
  const std::vector<Case> cases{
      {{{1.0, 0.5}}, {{0.2, -0.3}}, 4.0},
      {{{0.7, 0.0}, {0.1, 0.9}}, {{0.0, 0.4}, {0.6, 0.2}}, 3.0},
      {{{1.0, 1.0}, {0.0, 0.0}, {0.5, 0.5}}, {{0.0, 0.0}, {1.0, 0.0}, {0.5, -0.5}}, 2.0},
  };
  std::uint64_t seed = 11;
  for (const auto& c : cases) {
    const int n = static_cast<int>(c.h1.size());
    ChannelMatrix h(n, 2);
    double frob = 0.0;
    for (int k = 0; k < n; ++k) {
      h(k, 0) = c.h1[k];
      h(k, 1) = c.h2[k];
      frob += std::norm(c.h1[k] - c.h2[k]);
    }
    const double want = specfun::gauss_q(std::sqrt(c.mu * frob / 4.0));
    CHECK(rel_err(conditional_pep(c.mu, frob), want) < 1e-14);
    const auto est = simulate_fixed_channel(h, c.mu, 1'000'000, ++seed);
    CAPTURE(n);
    CAPTURE(est.ber);
    CAPTURE(want);
    CHECK(est.symbols == 1'000'000);
    CHECK(est.trials == 1'000'000);
    const double sigma = std::sqrt(want * (1.0 - want) / 1e6);
    CHECK(std::abs(est.ber - want) < 3.0 * sigma);
  }
}

TEST_CASE("serial and OpenMP execution are bitwise identical for any thread count") {
  auto cfg = osm_config(2, {0.0, 6.0, 12.0});
  cfg.max_symbols = 300'000;
  cfg.target_errors = 500;
  const auto ref = simulate_osm(cfg, Execution::serial);

  auto base = baseline_config(Scheme::mrc_dpsk, 1, 2, {0.0, 10.0});
  base.max_symbols = 100'000;
  const auto base_ref = simulate_baseline(base, Execution::serial);

  ChannelMatrix h(1, 4);
  h(0, 0) = {1.0, 0.0};
  h(0, 1) = {0.0, 1.0};
  h(0, 2) = {-1.0, 0.0};
  h(0, 3) = {0.0, -1.0};
  const auto fixed_ref = simulate_fixed_channel(h, 3.0, 150'000, 5, Execution::serial);

  const std::vector<double> s{0.1, 1.0, 10.0};
  const auto mgf_ref = estimate_mgf_delta({2.0, 2.0, 2.0, kPi / 3.0}, {2.0, 2.0, 1.0, kPi / 4.0}, s, 300'000, 9,
                                          Execution::serial);
  const auto int_ref = sample_intensities({1.5, 1.5, 1.0, 0.0}, 200'001, 3, Execution::serial);

  const int saved = omp_get_max_threads();
  for (int threads : {1, 3, 8}) {
    omp_set_num_threads(threads);
    CAPTURE(threads);
    const auto par = simulate_osm(cfg, Execution::parallel);
    REQUIRE(par.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(same(par[i], ref[i]));

    const auto bpar = simulate_baseline(base, Execution::parallel);
    for (std::size_t i = 0; i < base_ref.size(); ++i) CHECK(same(bpar[i], base_ref[i]));

    CHECK(same(simulate_fixed_channel(h, 3.0, 150'000, 5, Execution::parallel), fixed_ref));

    const auto mpar = estimate_mgf_delta({2.0, 2.0, 2.0, kPi / 3.0}, {2.0, 2.0, 1.0, kPi / 4.0}, s, 300'000, 9,
                                         Execution::parallel);
    for (std::size_t j = 0; j < s.size(); ++j) {
      CHECK(mpar[j].mean == mgf_ref[j].mean);
      CHECK(mpar[j].std_error == mgf_ref[j].std_error);
    }
    CHECK(sample_intensities({1.5, 1.5, 1.0, 0.0}, 200'001, 3, Execution::parallel) == int_ref);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("seed fixes the output; a different seed changes it") {
  auto cfg = osm_config(1, {4.0, 8.0});
  cfg.max_symbols = 100'000;
  const auto a = simulate_osm(cfg);
  const auto b = simulate_osm(cfg);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(same(a[i], b[i]));
  cfg.seed += 1;
  const auto c = simulate_osm(cfg);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) differs = differs || !same(a[i], c[i]);
  CHECK(differs);
}

TEST_CASE("OSM simulation: stopping rule, estimate fields and budget flag") {
  auto cfg = osm_config(1, {0.0, 40.0});
  cfg.max_symbols = 500'000;
  cfg.target_errors = 100;
  const auto est = simulate_osm(cfg);
  REQUIRE(est.size() == 2);

  // 0 dB: errors are plentiful, so the run stops early.
  CHECK(est[0].snr_db == 0.0);
  CHECK(est[0].errors >= 100);
  CHECK(est[0].symbols < cfg.max_symbols);
  CHECK_FALSE(est[0].budget_exhausted);
  // 40 dB: BER near 2e-5 cannot reach 100 errors in 5e5 symbols.
  CHECK(est[1].symbols == cfg.max_symbols);
  CHECK(est[1].errors < 100);
  CHECK(est[1].budget_exhausted);

  for (const auto& e : est) {
    CHECK_FALSE(e.semi_analytic);
    CHECK(e.trials == e.symbols);  // one bit per symbol at M = 2
    CHECK(e.ber == static_cast<double>(e.errors) / static_cast<double>(e.trials));
    CHECK(e.ci_low <= e.ber);
    CHECK(e.ber <= e.ci_high);
  }

  // M = 4: two bits per symbol.
  SimConfig four;
  four.m_tx = 4;
  four.n_rx = 1;
  for (int m = 0; m < 4; ++m) four.links.push_back({2.0, 2.0, 1.0 + m, m * kPi / 5.0});
  four.snr_grid = SnrGrid::from_db({5.0});
  four.max_symbols = 20'000;
  const auto e4 = simulate_osm(four);
  CHECK(e4[0].trials == 2 * e4[0].symbols);
}

TEST_CASE("OSM simulation agrees with the analytic APEP") {
  for (int n : {1, 2}) {
    auto cfg = osm_config(n, {0.0, 5.0, 10.0, 15.0});
    cfg.max_symbols = 400'000;
    cfg.target_errors = 2000;
    const auto sim = simulate_osm(cfg);
    const auto sc = OsmScenario::from_links(2, n, cfg.links);
    double last_high = 1.0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
      const double want = apep_exact(cfg.snr_grid.linear(i), sc.branches(0, 1));
      CAPTURE(n);
      CAPTURE(sim[i].snr_db);
      CAPTURE(sim[i].ber);
      CAPTURE(want);
      CHECK(std::abs(sim[i].ber - want) < 3.0 * sim[i].std_error);
      // Non-increasing in SNR up to interval overlap.
      CHECK(sim[i].ci_low <= last_high);
      last_high = sim[i].ci_high;
    }
  }
}

TEST_CASE("M = 4 simulation stays under the union bound") {
  SimConfig cfg;
  cfg.m_tx = 4;
  cfg.n_rx = 2;
  const std::vector<HkParams> tx{{2.0, 2.0, 2.0, kPi / 3.0},
                                 {2.0, 2.0, 1.0, kPi / 4.0},
                                 {2.0, 2.0, 1.5, -kPi / 2.0},
                                 {2.0, 2.0, 0.5, kPi}};
  for (const auto& p : tx)
    for (int n = 0; n < 2; ++n) cfg.links.push_back(p);
  cfg.snr_grid = SnrGrid::from_db({0.0, 5.0, 10.0, 15.0});
  cfg.max_symbols = 300'000;
  cfg.target_errors = 1000;
  const auto sim = simulate_osm(cfg);
  const auto sc = OsmScenario::from_links(4, 2, cfg.links);
  for (std::size_t i = 0; i < sim.size(); ++i) {
    CAPTURE(sim[i].snr_db);
    CHECK(sim[i].ci_low <= abep_osm(cfg.snr_grid.linear(i), sc));
  }
}

TEST_CASE("semi-analytic baselines") {
  const std::vector<double> db{0.0, 5.0, 10.0, 20.0, 30.0};
  SUBCASE("MRC matches the analytic product form") {
    for (int n : {1, 2}) {
      const auto cfg = baseline_config(Scheme::mrc_dpsk, 1, n, db);
      const auto sim = simulate_baseline(cfg);
      for (std::size_t i = 0; i < sim.size(); ++i) {
        const double want = mrc_abep_dpsk(cfg.snr_grid.linear(i), 1.5, 1.5, n);
        CAPTURE(n);
        CAPTURE(sim[i].snr_db);
        CHECK(sim[i].semi_analytic);
        CHECK(sim[i].errors == 0);
        CHECK(sim[i].trials == cfg.max_symbols);
        CHECK(std::abs(sim[i].ber - want) < 3.0 * sim[i].std_error);
      }
    }
  }
  SUBCASE("Alamouti matches the analytic integral") {
    const auto cfg = baseline_config(Scheme::alamouti_bpsk, 2, 1, db);
    const auto sim = simulate_baseline(cfg);
    for (std::size_t i = 0; i < sim.size(); ++i) {
      const double want = alamouti_abep_bpsk(cfg.snr_grid.linear(i), 1.5, 1.5, 2);
      CAPTURE(sim[i].snr_db);
      CHECK(std::abs(sim[i].ber - want) < 3.0 * sim[i].std_error);
    }
  }
  SUBCASE("MRC never loses to SC") {
    for (int n : {2, 3}) {
      const auto mrc = simulate_baseline(baseline_config(Scheme::mrc_dpsk, 1, n, db));
      const auto sc = simulate_baseline(baseline_config(Scheme::sc_dpsk, 1, n, db));
      for (std::size_t i = 0; i < mrc.size(); ++i) {
        CAPTURE(n);
        CAPTURE(mrc[i].snr_db);
        CHECK(mrc[i].ber <= sc[i].ber);
      }
      // A single branch makes the two combiners identical.
      const auto one_mrc = simulate_baseline(baseline_config(Scheme::mrc_dpsk, 1, 1, db));
      const auto one_sc = simulate_baseline(baseline_config(Scheme::sc_dpsk, 1, 1, db));
      for (std::size_t i = 0; i < one_mrc.size(); ++i) CHECK(one_mrc[i].ber == one_sc[i].ber);
    }
  }
}

TEST_CASE("estimate_mgf_delta: s = 0 is exact and the estimate tracks mgf_delta") {
  const HkParams a{1.5, 1.0, 1.2, 0.4};
  const HkParams b{1.5, 1.0, 0.3, 2.0};
  const std::vector<double> s{0.0, 0.5, 3.0};
  const auto est = estimate_mgf_delta(a, b, s, 500'000, 77);
  CHECK(est[0].mean == 1.0);
  CHECK(est[0].std_error == 0.0);
  CHECK(est[0].samples == 500'000);
  const auto p = delta_params(a, b);
  for (std::size_t j = 1; j < s.size(); ++j) CHECK(std::abs(est[j].mean - mgf_delta(s[j], p)) < 3.0 * est[j].std_error);
  CHECK_THROWS_AS(estimate_mgf_delta(a, {2.0, 1.0, 0.3, 2.0}, s, 1000, 1), ValidationError);
}

TEST_CASE("configuration validation") {
  auto good = osm_config(2, {0.0});
  CHECK_NOTHROW(good.validate());

  auto c = good;
  c.max_symbols = 999;
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);
  c = good;
  c.target_errors = 9;
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);
  CHECK_THROWS_AS(SnrGrid::from_db({}), ValidationError);
  c = good;
  c.links.pop_back();
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);
  c = good;
  c.links[2].alpha = 3.0;  // second transmitter, first aperture
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);
  c = good;
  c.links[0].b0 = -1.0;
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);

  SimConfig three;
  three.m_tx = 3;
  three.links.assign(3, HkParams{});
  CHECK_THROWS_AS(simulate_osm(three), ValidationError);

  c = good;
  c.scheme = Scheme::mrc_dpsk;
  CHECK_THROWS_AS(simulate_osm(c), ValidationError);  // wrong entry point
  CHECK_THROWS_AS(simulate_baseline(c), ValidationError);  // a_det != 0
  CHECK_THROWS_AS(simulate_baseline(good), ValidationError);

  ChannelMatrix h3(1, 3);
  CHECK_THROWS_AS(simulate_fixed_channel(h3, 1.0, 1000, 1), ValidationError);
}
