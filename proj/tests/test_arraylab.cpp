#include <doctest.h>

#include <cmath>
#include <random>

#include "ttdbeam/arraylab.hpp"

using namespace ttdbeam;

namespace {

ValidatedConfig eight_beam_cfg() {
  SystemConfig raw;
  raw.fc_hz = 28e9;
  raw.bw_hz = 400e6;
  raw.mtot = 8;
  raw.ncp = 4;
  raw.ntx = 1;
  raw.nrx = 8;
  raw.delta_tau_s = 2.5e-9;
  return validate(raw);
}

// reference gain straight from the definition |w^H a|^2 / nrx
double gain_inner_product(const ValidatedConfig& cfg, double theta, int m) {
  const double f = cfg.subcarrier_frequency(m);
  const cvec w = ttd_combiner(cfg, m);
  const cvec a = rx_steering(theta, f, cfg.nrx(), cfg.fc());
  return std::norm(cdot(w, a)) / cfg.nrx();
}

// angle distance with the endfire points identified (sin = +1 and -1 are the
// same residue of the 2-periodic gain)
double endfire_dist(double a, double b) {
  const double direct = std::abs(a - b);
  const double through1 = std::abs(kPi / 2 - a) + std::abs(-kPi / 2 - b);
  const double through2 = std::abs(a + kPi / 2) + std::abs(kPi / 2 - b);
  return std::min({direct, through1, through2});
}

}  // namespace

TEST_CASE("steering vector basics") {
  cvec a = rx_steering(0.0, 28e9, 8, 28e9);
  for (const cplx& e : a) CHECK(std::abs(e - cplx(1.0, 0.0)) < 1e-15);

  cvec b = rx_steering(kPi / 2, 28e9, 2, 28e9);
  CHECK(std::abs(b[0] - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(b[1] - std::polar(1.0, -kPi)) < 1e-12);
}

TEST_CASE("steering conjugate symmetry in the angle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2);
  for (int t = 0; t < 50; ++t) {
    double th = ang(rng);
    cvec p = rx_steering(th, 28.2e9, 16, 28e9);
    cvec n = rx_steering(-th, 28.2e9, 16, 28e9);
    for (int i = 0; i < 16; ++i) CHECK(std::abs(n[i] - std::conj(p[i])) < 1e-12);
  }
}

TEST_CASE("ttd combiner phases") {
  auto cfg = eight_beam_cfg();
  cvec w0 = ttd_combiner(cfg, 0);  // f = 28 GHz, f*dtau = 70 integer
  for (const cplx& e : w0) CHECK(std::abs(e - cplx(1.0, 0.0)) < 1e-12);

  cvec w2 = ttd_combiner(cfg, 2);  // f = 28.1 GHz, quarter-cycle steps
  for (int n = 0; n < 8; ++n)
    CHECK(std::abs(w2[n] - std::polar(1.0, kPi * n / 2)) < 1e-12);
  CHECK(std::abs(w2[0] - cplx(1.0, 0.0)) == 0.0);
}

TEST_CASE("gain closed form: peak, null, and range") {
  auto cfg = eight_beam_cfg();
  CHECK(gain(cfg, 0.0, 0) == doctest::Approx(8.0).epsilon(1e-12));

  // first Dirichlet null: psi = 2/nrx away from the peak
  const double f = cfg.subcarrier_frequency(0);
  const double s_null = (2.0 / 8) / (f / cfg.fc());
  CHECK(gain(cfg, std::asin(s_null), 0) < 1e-22);

  for (double th = -1.5; th <= 1.5; th += 0.05)
    for (int m = 0; m < 8; ++m) {
      double g = gain(cfg, th, m);
      CHECK(g >= 0.0);
      CHECK(g <= 8.0 + 1e-9);
    }
}

TEST_CASE("gain closed form agrees with the inner-product definition") {
  auto cfg = eight_beam_cfg();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2);
  std::uniform_int_distribution<int> sub(0, 7);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    double th = ang(rng);
    int m = sub(rng);
    double g1 = gain(cfg, th, m);
    double g2 = gain_inner_product(cfg, th, m);
    worst = std::max(worst, std::abs(g1 - g2) / std::max(std::abs(g2), 1e-12));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("gain is 2-periodic in psi with peak nrx") {
  for (int n : {2, 5, 8, 16}) {
    CHECK(gain_psi(0.0, n) == n);
    for (double psi = -3.0; psi < 3.0; psi += 0.37) {
      CHECK(gain_psi(psi, n) == doctest::Approx(gain_psi(psi + 2.0, n)).epsilon(1e-9));
      CHECK(gain_psi(psi, n) <= n + 1e-9);
    }
    CHECK(gain_psi(2.0, n) == n);  // removable singularity
  }
}

TEST_CASE("beam center matches the numeric argmax of the gain") {
  auto cfg = eight_beam_cfg();
  const int grid = 8192;
  for (int m = 0; m < 8; ++m) {
    double best_theta = 0.0, best = -1.0;
    for (int k = 0; k < grid; ++k) {
      double th = -kPi / 2 + kPi * k / (grid - 1);
      double g = gain(cfg, th, m);
      if (g > best) {
        best = g;
        best_theta = th;
      }
    }
    const double f = cfg.subcarrier_frequency(m);
    const double approx_err =
        std::abs(std::asin(std::min(1.0, std::abs(std::sin(beam_center(cfg, m))))) -
                 std::asin(std::min(1.0, std::abs(std::sin(beam_center(cfg, m))) * cfg.fc() / f)));
    CHECK(endfire_dist(beam_center(cfg, m), best_theta) <=
          kPi / (grid - 1) + approx_err + 1e-9);
    // the exact variant should land within one grid step
    CHECK(endfire_dist(beam_center(cfg, m, true), best_theta) <= kPi / (grid - 1) + 1e-9);
  }
}

TEST_CASE("beam center principal values for the reference subcarriers") {
  auto cfg = eight_beam_cfg();
  CHECK(beam_center(cfg, 0) == doctest::Approx(0.0));                 // 28.0 GHz
  CHECK(beam_center(cfg, 2) == doctest::Approx(-kPi / 6).epsilon(1e-9));  // 28.1 GHz
  CHECK(beam_center(cfg, 6) == doctest::Approx(kPi / 6).epsilon(1e-9));   // 27.9 GHz
  for (int m = 0; m < 8; ++m) {
    CHECK(beam_center(cfg, m) >= -kPi / 2);
    CHECK(beam_center(cfg, m) <= kPi / 2);
  }
}

TEST_CASE("epsilon beamwidth reproduces the 3 dB and 4 dB widths") {
  CHECK(epsilon_beamwidth(0.5, 8) == doctest::Approx(0.886 / 8).epsilon(1e-2));
  CHECK(std::abs(epsilon_beamwidth(0.5, 8) - 0.886 / 8) < 1e-3);
  CHECK(std::abs(epsilon_beamwidth(0.5, 16) - 0.886 / 16) < 1e-3);
  CHECK(std::abs(epsilon_beamwidth(0.5, 32) - 0.886 / 32) < 1e-3);
  CHECK(std::abs(epsilon_beamwidth(0.6, 8) - 0.1266) < 1e-3);

  // the returned width is the actual crossing of the floor
  for (double eps : {0.3, 0.5, 0.6, 0.9}) {
    for (int n : {4, 8, 16}) {
      double om = epsilon_beamwidth(eps, n);
      CHECK(om > 0.0);
      CHECK(gain_psi(om * (1 - 1e-6), n) >= (1 - eps) * n - 1e-6);
      CHECK(gain_psi(om * (1 + 1e-3), n) < (1 - eps) * n);
    }
  }
}

TEST_CASE("min max gain over the reference configuration") {
  auto cfg = eight_beam_cfg();
  double v = min_max_gain(cfg, cfg.pilots(), 4096);
  // exact-gain evaluation dips to about 3.008 at the endfire seam
  CHECK(v == doctest::Approx(3.0079).epsilon(1e-3));

  // a single pilot cannot cover the angular domain
  double lone = min_max_gain(cfg, {0}, 4096);
  CHECK(lone < 0.1 * 8);

  // adding a pilot never decreases the min-max
  double sub = min_max_gain(cfg, {0, 1, 2, 3}, 1024);
  double full = min_max_gain(cfg, cfg.pilots(), 1024);
  CHECK(full >= sub - 1e-12);

  CHECK_THROWS_AS(min_max_gain(cfg, {}, 4096), Error);
}

TEST_CASE("design subset membership at the reference points") {
  DesignContext ctx{28e9, 400e6, 8};
  // floor 0.4 -> epsilon 0.6
  DesignPoint eight_beam{2.5e-9, 8, 0.6};
  CHECK(in_design_subset(eight_beam, ctx, true));
  CHECK_FALSE(in_design_subset(eight_beam, ctx, false));

  DesignPoint roomier{2.6e-9, 9, 0.6};
  CHECK(in_design_subset(roomier, ctx, false));

  DesignPoint tiny{2.5e-9, 1, 0.6};
  CHECK_FALSE(in_design_subset(tiny, ctx, true));
  CHECK_FALSE(in_design_subset(tiny, ctx, false));
}

TEST_CASE("required subcarriers at the reference points") {
  CHECK(required_subcarriers(2.5e-9, 28e9, 400e6, 0.6, 8, true) == 8);
  CHECK(required_subcarriers(2.5179e-9, 28e9, 400e6, 0.6, 8, false) == 9);
  CHECK_THROWS_AS(required_subcarriers(2.4e-9, 28e9, 400e6, 0.6, 8, true), Error);
  CHECK_THROWS_AS(required_subcarriers(2.5e-9, 28e9, 400e6, 0.6, 8, false), Error);

  // requirement grows with the array size (shrinking beamwidth)
  int prev = 0;
  for (int n : {4, 8, 16, 32}) {
    int req = required_subcarriers(2.5e-9, 28e9, 400e6, 0.5, n, true);
    CHECK(req > prev);
    prev = req;
  }
}

TEST_CASE("lut pairs every pilot with its beam center") {
  auto cfg = eight_beam_cfg();
  SoundingLUT lut = build_lut(cfg, cfg.pilots());
  REQUIRE(lut.entries.size() == 8);
  CHECK(lut.angle_of(0) == doctest::Approx(0.0));
  for (const auto& [m, th] : lut.entries) {
    CHECK(th == doctest::Approx(beam_center(cfg, m)));
    CHECK(th >= -kPi / 2);
    CHECK(th <= kPi / 2);
  }
  SoundingLUT single = build_lut(cfg, {3});
  CHECK(single.entries.size() == 1);
  CHECK_THROWS_AS(build_lut(cfg, {}), Error);
  CHECK_THROWS_AS(single.angle_of(4), Error);
}
