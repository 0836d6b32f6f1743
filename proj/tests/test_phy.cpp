#include <doctest.h>

#include <cmath>
#include <random>

#include "ttdbeam/arraylab.hpp"
#include "ttdbeam/phy.hpp"

using namespace ttdbeam;

namespace {

ValidatedConfig cfg_of(int mtot, int ntx, int nrx, const std::vector<int>& pilots = {}) {
  SystemConfig raw;
  raw.fc_hz = 28e9;
  raw.bw_hz = 400e6;
  raw.mtot = mtot;
  raw.ncp = mtot / 2;
  raw.ntx = ntx;
  raw.nrx = nrx;
  raw.delta_tau_s = 2.5e-9;
  raw.pilot_set = pilots;
  return validate(raw);
}

}  // namespace

TEST_CASE("pilot amplitudes and total power") {
  auto cfg = cfg_of(2048, 1, 1);
  auto set = select_pilot_subcarriers(2048, 8);
  PilotGrid grid = make_pilots(cfg, set);
  for (int m : set) CHECK(std::abs(grid.x[m] - cplx(16.0, 0.0)) < 1e-12);

  double power = 0.0;
  for (const cplx& x : grid.x) power += std::norm(x);
  CHECK(power == doctest::Approx(2048.0).epsilon(1e-12));

  // full loading gives unit amplitudes
  std::vector<int> all(2048);
  for (int m = 0; m < 2048; ++m) all[m] = m;
  PilotGrid full = make_pilots(cfg, all);
  CHECK(std::abs(full.x[1000] - cplx(1.0, 0.0)) < 1e-12);

  // random subsets keep the power constraint
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> set2;
    std::uniform_int_distribution<int> idx(0, 2047);
    for (int i = 0; i < 37; ++i) set2.push_back(idx(rng));
    PilotGrid g2 = make_pilots(cfg, set2);
    double p2 = 0.0;
    for (const cplx& x : g2.x) p2 += std::norm(x);
    CHECK(p2 == doctest::Approx(2048.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(make_pilots(cfg, {}), Error);
}

TEST_CASE("stride subcarrier selection") {
  auto set = select_pilot_subcarriers(2048, 8);
  REQUIRE(set.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(set[i] == i * 256);
  CHECK(select_pilot_subcarriers(16, 16).back() == 15);
  CHECK_THROWS_AS(select_pilot_subcarriers(2048, 7), Error);
}

TEST_CASE("stride selection reproduces the small system's combiners exactly") {
  const int m_small = 8, ratio = 256;
  auto small = cfg_of(m_small, 1, 8);
  auto big = cfg_of(m_small * ratio, 1, 8);
  auto set = select_pilot_subcarriers(m_small * ratio, m_small);
  for (int m = 0; m < m_small; ++m) {
    CHECK(big.subcarrier_frequency(set[m]) == small.subcarrier_frequency(m));
    cvec wb = ttd_combiner(big, set[m]);
    cvec ws = ttd_combiner(small, m);
    for (int n = 0; n < 8; ++n) CHECK(std::abs(wb[n] - ws[n]) == 0.0);
  }
}

TEST_CASE("resource block expansion") {
  auto b = resource_block_expand({256}, 2048);
  REQUIRE(b.size() == 13);
  CHECK(b.front() == 250);
  CHECK(b.back() == 262);

  auto edge = resource_block_expand({0}, 2048);
  REQUIRE(edge.size() == 7);
  CHECK(edge.front() == 0);
  CHECK(edge.back() == 6);

  auto merged = resource_block_expand({100, 104}, 2048);
  CHECK(merged.size() == 17);  // 94..110 without duplicates

  auto top = resource_block_expand({2047}, 2048);
  CHECK(top.size() == 7);
  CHECK(top.back() == 2047);
}

TEST_CASE("identity channel returns the transmitted pilots") {
  auto cfg = cfg_of(64, 1, 1);
  MultipathChannel ch;
  ch.paths.push_back(PathComponent{1.0, 0.0, 0.0, 0.0});
  PulseShape p;
  PilotGrid grid = make_pilots(cfg, select_pilot_subcarriers(64, 8));
  ReceivedSymbol y = receive_symbol(cfg, ch, p, {cplx(1.0, 0.0)}, grid, std::nullopt);
  for (int m = 0; m < 64; ++m) CHECK(std::abs(y.y[m] - grid.x[m]) < 1e-12);
  CHECK(y.noise_variance == 0.0);
}

TEST_CASE("aligned LoS peak composes the array gains") {
  auto cfg = cfg_of(64, 4, 8);
  PulseShape p;
  MultipathChannel ch;
  ch.paths.push_back(PathComponent{1.0, 0.0, 0.4, 0.0});  // broadside arrival
  cvec v = aligned_tx_beamformer(ch, cfg, 0);
  PilotGrid grid = make_pilots(cfg, {0});  // f = fc, beam center 0 = arrival
  ReceivedSymbol y = receive_symbol(cfg, ch, p, v, grid, std::nullopt);
  const double rho = std::sqrt(4.0 * 8.0);
  // |Y| = rho * |w^H a_rx| * |a_tx^H v| * |X| = rho * nrx * ntx * |X| at the peak
  CHECK(std::abs(y.y[0]) ==
        doctest::Approx(rho * 8.0 * 4.0 * std::abs(grid.x[0])).epsilon(1e-9));
}

TEST_CASE("received symbol is linear in the pilots (noiseless)") {
  auto cfg = cfg_of(64, 2, 4);
  PulseShape p;
  MultipathChannel ch;
  ch.paths.push_back(PathComponent{cplx(0.6, -0.2), 45e-9, 0.2, -0.7});
  cvec v(2, cplx(1.0, 0.0));
  PilotGrid a = make_pilots(cfg, {3, 17});
  PilotGrid b = a;
  for (auto& x : b.x) x *= cplx(0.0, 2.0);
  ReceivedSymbol ya = receive_symbol(cfg, ch, p, v, a, std::nullopt);
  ReceivedSymbol yb = receive_symbol(cfg, ch, p, v, b, std::nullopt);
  for (int m : a.active)
    CHECK(std::abs(yb.y[m] - cplx(0.0, 2.0) * ya.y[m]) < 1e-12);
}

TEST_CASE("subcarrier-selection identity: big system equals small system exactly") {
  PulseShape p;
  for (int ratio : {4, 256}) {
    const int m_small = 64;  // symbol window must hold the full pulse support
    auto small = cfg_of(m_small, 2, 4);
    auto big = cfg_of(m_small * ratio, 2, 4);
    MultipathChannel ch;
    ch.paths.push_back(PathComponent{cplx(0.7, 0.1), 3.3e-9, 0.25, -0.55});
    ch.paths.push_back(PathComponent{cplx(-0.3, 0.5), 7.9e-9, -0.8, 0.35});
    cvec v = {cplx(1.0, 0.0), std::polar(1.0, 0.77)};

    auto set = select_pilot_subcarriers(m_small * ratio, m_small);
    // identical pilot values at the mapped indices
    PilotGrid gs = make_pilots(small, small.pilots());
    PilotGrid gb;
    gb.x.assign(big.mtot(), cplx(0.0, 0.0));
    gb.active = set;
    for (int m = 0; m < m_small; ++m) gb.x[set[m]] = gs.x[m];

    ReceivedSymbol ys = receive_symbol(small, ch, p, v, gs, std::nullopt);
    ReceivedSymbol yb = receive_symbol(big, ch, p, v, gb, std::nullopt);
    for (int m = 0; m < m_small; ++m) {
      double den = std::max(std::abs(ys.y[m]), 1e-30);
      CHECK(std::abs(yb.y[set[m]] - ys.y[m]) / den < 1e-12);
    }
  }
}

TEST_CASE("noise variance and independence across subcarriers") {
  auto cfg = cfg_of(256, 1, 1);
  PulseShape p;
  MultipathChannel ch;
  ch.paths.push_back(PathComponent{0.0, 0.0, 0.0, 0.0});  // zero channel isolates noise
  cvec v{cplx(1.0, 0.0)};
  std::vector<int> all(256);
  for (int m = 0; m < 256; ++m) all[m] = m;
  PilotGrid grid = make_pilots(cfg, all);

  const int symbols = 400;  // ~1e5 samples
  double acc = 0.0;
  cplx cross = 0.0;
  for (int s = 0; s < symbols; ++s) {
    ReceivedSymbol y = receive_symbol(cfg, ch, p, v, grid, 1000 + s);
    for (int m = 0; m < 256; ++m) acc += std::norm(y.y[m]);
    for (int m = 0; m + 1 < 256; ++m) cross += y.y[m] * std::conj(y.y[m + 1]);
  }
  const double n_samples = 256.0 * symbols;
  const double want = cfg.noise_variance();
  CHECK(acc / n_samples == doctest::Approx(want).epsilon(0.05));
  // neighbor correlation within ~4 sigma of zero
  CHECK(std::abs(cross) / n_samples < 4.0 * want / std::sqrt(n_samples - symbols));
}

TEST_CASE("receive rejects CP violations") {
  auto cfg = cfg_of(64, 1, 1);
  PulseShape p;
  MultipathChannel ch;
  ch.paths.push_back(PathComponent{1.0, 1e-6, 0.0, 0.0});  // far beyond the CP
  cvec v{cplx(1.0, 0.0)};
  PilotGrid grid = make_pilots(cfg, {0});
  CHECK_THROWS_AS(receive_symbol(cfg, ch, p, v, grid, std::nullopt), Error);
}
