#include "ttdbeam/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "ttdbeam/arraylab.hpp"
#include "ttdbeam/oracle.hpp"
#include "ttdbeam/phy.hpp"

namespace ttdbeam {

namespace {

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

// splitmix64 finalizer over master and the (snr, trial, stream) coordinates
uint64_t derive_seed(uint64_t master, uint64_t snr_index, uint64_t trial, uint64_t stream) {
  uint64_t h = mix64(master + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (0x9E3779B97F4A7C15ULL * (snr_index + 1)));
  h = mix64(h ^ (0xC2B2AE3D27D4EB4FULL * (trial + 1)));
  h = mix64(h ^ (0x165667B19E3779F9ULL * (stream + 1)));
  return h;
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ValidatedConfig calibrate_n0(const ValidatedConfig& cfg, const MultipathChannel& ch,
                             const PulseShape& p, const cvec& v, double snr_db) {
  const double target = std::pow(10.0, snr_db / 10.0);
  double num = 0.0;
  for (int m = 0; m < cfg.mtot(); ++m) num += norm2(apply_channel(cfg, ch, p, v, m));
  if (num <= 0.0) fail(Err::InvalidArgument, "cannot calibrate SNR on a zero channel");
  // snr = num / (mtot * n0 * bw / (2 mtot)) = 2 num / (n0 bw)
  return cfg.with_n0(2.0 * num / (cfg.bw() * target));
}

void run_beampattern(const ValidatedConfig& cfg, int grid_size, std::ostream& out) {
  if (grid_size < 2) fail(Err::InvalidArgument, "grid_size must be >= 2");
  out << "theta_rad,m,f_m_hz,gain\n";
  for (int k = 0; k < grid_size; ++k) {
    double theta = -kPi / 2 + kPi * k / (grid_size - 1);
    for (int m : cfg.pilots()) {
      out << csv_double(theta) << ',' << m << ',' << csv_double(cfg.subcarrier_frequency(m))
          << ',' << csv_double(gain(cfg, theta, m)) << "\n";
    }
  }
}

void run_design_scan(const DesignScanSpec& spec, std::ostream& out) {
  if (spec.delta_taus_s.empty()) fail(Err::InvalidArgument, "no delta_tau values");
  const double floor = (1.0 - spec.epsilon) * spec.nrx;
  const double tol = spec.tol_gain > 0 ? spec.tol_gain : 1e-3 * spec.nrx;
  const DesignContext ctx{spec.fc_hz, spec.bw_hz, spec.nrx};
  out << "delta_tau_s,mtot,in_ss_strict,in_ss_relaxed,min_max_gain,pass\n";
  for (double dtau : spec.delta_taus_s) {
    for (int m_tot = spec.m_min; m_tot <= spec.m_max; ++m_tot) {
      if (m_tot % 2 != 0) continue;  // config invariant: even subcarrier counts
      DesignPoint dp{dtau, m_tot, spec.epsilon};
      const bool strict = in_design_subset(dp, ctx, false);
      const bool relaxed = in_design_subset(dp, ctx, true);
      SystemConfig raw;
      raw.fc_hz = spec.fc_hz;
      raw.bw_hz = spec.bw_hz;
      raw.mtot = m_tot;
      raw.ntx = 1;
      raw.nrx = spec.nrx;
      raw.delta_tau_s = dtau;
      const ValidatedConfig cfg = validate(raw);
      const double mmg = min_max_gain(cfg, cfg.pilots(), spec.grid_size);
      const bool pass = mmg >= floor - tol;
      out << csv_double(dtau) << ',' << m_tot << ',' << (strict ? 1 : 0) << ','
          << (relaxed ? 1 : 0) << ',' << csv_double(mmg) << ',' << (pass ? 1 : 0) << "\n";
    }
  }
}

void run_los_sweep(const ValidatedConfig& cfg, const LosSweepSpec& spec, std::ostream& out) {
  if (spec.trials < 1) fail(Err::InvalidArgument, "trials must be >= 1");
  if (spec.snr_db.empty() || spec.pilot_counts.empty())
    fail(Err::InvalidArgument, "sweep needs SNR points and pilot counts");
  for (double s : spec.snr_db)
    if (!std::isfinite(s)) fail(Err::InvalidArgument, "SNR grid must be finite");
  const PulseShape pulse;
  out << "snr_db,trial,pilots,aoa_true_rad,aoa_est_rad,post_gain,symbols_used\n";
  for (size_t s = 0; s < spec.snr_db.size(); ++s) {
    for (int t = 0; t < spec.trials; ++t) {
      std::mt19937_64 chan_rng(derive_seed(spec.seed, s, t, 0));
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      const double aoa = (unif(chan_rng) - 0.5) * kPi;
      const double aod = (unif(chan_rng) - 0.5) * kPi;
      const double phase = 2.0 * kPi * unif(chan_rng);
      MultipathChannel ch;
      ch.paths.push_back(PathComponent{std::polar(1.0, phase), 0.0, aod, aoa});
      const cvec v = aligned_tx_beamformer(ch, cfg, 0);
      const ValidatedConfig cal = calibrate_n0(cfg, ch, pulse, v, spec.snr_db[s]);
      for (size_t c = 0; c < spec.pilot_counts.size(); ++c) {
        const std::vector<int> pilots =
            select_pilot_subcarriers(cal.mtot(), spec.pilot_counts[c]);
        const std::vector<int> active = resource_block_expand(pilots, cal.mtot());
        const PilotGrid grid = make_pilots(cal, active);
        const ReceivedSymbol y =
            receive_symbol(cal, ch, pulse, v, grid, derive_seed(spec.seed, s, t, 1 + c));
        const TrainingResult r =
            estimate_aoa(rsrp(y, pilot_blocks(pilots, cal.mtot())), build_lut(cal, pilots));
        const double pg = post_training_gain(r.aoa_estimate, aoa, cal.nrx(), cal.fc());
        out << csv_double(spec.snr_db[s]) << ',' << t << ',' << spec.pilot_counts[c] << ','
            << csv_double(aoa) << ',' << csv_double(r.aoa_estimate) << ',' << csv_double(pg)
            << ',' << r.symbols_used << "\n";
      }
    }
  }
}

void run_benchmark(const ValidatedConfig& cfg, const BenchmarkSpec& spec, std::ostream& out) {
  if (spec.trials < 1) fail(Err::InvalidArgument, "trials must be >= 1");
  const PulseShape pulse;
  const bool from_file = !spec.channel_file.empty();
  MultipathChannel file_ch;
  if (from_file) file_ch = load_channel(spec.channel_file);
  out << "snr_db,trial,method,k,symbols_used,aoa_true_rad,aoa_est_rad,post_gain,se_bps_hz\n";
  for (size_t s = 0; s < spec.snr_db.size(); ++s) {
    for (int t = 0; t < spec.trials; ++t) {
      MultipathChannel ch;
      if (from_file) {
        ch = file_ch;
      } else if (spec.num_paths == 1) {
        std::mt19937_64 chan_rng(derive_seed(spec.seed, s, t, 0));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double aoa = (unif(chan_rng) - 0.5) * kPi;
        const double aod = (unif(chan_rng) - 0.5) * kPi;
        ch.paths.push_back(
            PathComponent{std::polar(1.0, 2.0 * kPi * unif(chan_rng)), 0.0, aod, aoa});
      } else {
        GenSpec g;
        g.num_paths = spec.num_paths;
        g.delay_min_s = 0.0;
        g.delay_max_s = 50e-9;
        g.gain_profile = GainProfile::GaussianExpDecay;
        ch = generate_paths(derive_seed(spec.seed, s, t, 0), g);
      }
      int dominant = 0;
      for (int l = 1; l < ch.num_paths(); ++l)
        if (std::norm(ch.paths[l].gain) > std::norm(ch.paths[dominant].gain)) dominant = l;
      const double aoa_true = ch.paths[dominant].aoa_rad;
      const cvec v = aligned_tx_beamformer(ch, cfg, dominant);
      const ValidatedConfig cal = calibrate_n0(cfg, ch, pulse, v, spec.snr_db[s]);

      const std::vector<int> pilots = select_pilot_subcarriers(cal.mtot(), spec.pilot_count);
      const std::vector<int> active = resource_block_expand(pilots, cal.mtot());
      const ValidatedConfig cal_act = cal.with_pilots(active);
      const PilotGrid grid = make_pilots(cal, active);

      const ReceivedSymbol y =
          receive_symbol(cal, ch, pulse, v, grid, derive_seed(spec.seed, s, t, 1));
      const TrainingResult ttd =
          estimate_aoa(rsrp(y, pilot_blocks(pilots, cal.mtot())), build_lut(cal, pilots));
      out << csv_double(spec.snr_db[s]) << ',' << t << ",ttd,1," << ttd.symbols_used << ','
          << csv_double(aoa_true) << ',' << csv_double(ttd.aoa_estimate) << ','
          << csv_double(post_training_gain(ttd.aoa_estimate, aoa_true, cal.nrx(), cal.fc()))
          << ',' << csv_double(spectral_efficiency_trained(cal, ch, pulse, v, ttd.aoa_estimate))
          << "\n";

      for (size_t ki = 0; ki < spec.paa_k.size(); ++ki) {
        const int k_beams = spec.paa_k[ki];
        const TrainingResult paa = paa_dft_training(cal_act, ch, pulse, v, k_beams,
                                                    derive_seed(spec.seed, s, t, 2 + ki));
        out << csv_double(spec.snr_db[s]) << ',' << t << ",paa," << k_beams << ','
            << paa.symbols_used << ',' << csv_double(aoa_true) << ','
            << csv_double(paa.aoa_estimate) << ','
            << csv_double(post_training_gain(paa.aoa_estimate, aoa_true, cal.nrx(), cal.fc()))
            << ','
            << csv_double(spectral_efficiency_trained(cal, ch, pulse, v, paa.aoa_estimate))
            << "\n";
      }
    }
  }
}

namespace {

struct VerifyTrial {
  ValidatedConfig cfg;
  MultipathChannel ch;
  cvec v;
  PilotGrid grid;
  int family;
};

// Trial families keep every per-element delay difference an integer number of
// samples, where the truncated-pulse frequency/time equivalence is exact:
//   0: broadside channel, sample-aligned TTD taps
//   1: common nonzero AoA, fractional TTD spacing chosen so the per-element
//      receive step (aperture + tap) lands on the sample grid
//   2: 1x1 scalar chain, arbitrary fractional spacing
VerifyTrial make_verify_trial(uint64_t seed, int family, bool random_angles,
                              const PulseShape& pulse) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto randint = [&](int lo, int hi) {  // inclusive
    return lo + static_cast<int>(unif(rng) * (hi - lo + 1)) % (hi - lo + 1);
  };

  SystemConfig raw;
  raw.fc_hz = 28e9;
  raw.bw_hz = 400e6;
  raw.mtot = (randint(0, 1) == 0) ? 64 : 128;
  raw.ncp = raw.mtot * 7 / 8;
  const double ts = 1.0 / raw.bw_hz;

  double aoa = 0.0, aod = 0.0;
  int k_taps = randint(1, 2);
  if (family == 0) {
    raw.nrx = randint(2, 8);
    raw.ntx = randint(1, 8);
    raw.delta_tau_s = k_taps * ts;
  } else if (family == 1) {
    const int choices[3] = {3, 5, 7};
    raw.nrx = choices[randint(0, 2)];
    raw.ntx = randint(1, 4);
    aoa = (unif(rng) - 0.5) * 2.4;
    raw.delta_tau_s = k_taps * ts - std::sin(aoa) / (2.0 * raw.fc_hz);
  } else {
    raw.nrx = 1;
    raw.ntx = 1;
    aoa = (unif(rng) - 0.5) * 2.4;
    aod = (unif(rng) - 0.5) * 2.4;
    raw.delta_tau_s = (0.5 + 2.5 * unif(rng)) * ts;
  }
  if (random_angles) {
    raw.nrx = randint(2, 8);
    raw.ntx = randint(2, 8);
    raw.delta_tau_s = k_taps * ts;
  }

  const int num_paths = randint(1, 5);
  const double ttd_span_samples = (raw.nrx - 1) * raw.delta_tau_s / ts;
  const double lo = pulse.span / 2.0 + 1.0;
  const double hi = raw.ncp - pulse.span / 2.0 - ttd_span_samples - 2.0;

  MultipathChannel ch;
  for (int l = 0; l < num_paths; ++l) {
    PathComponent p;
    p.delay_s = (lo + (hi - lo) * unif(rng)) * ts;
    p.aoa_rad = random_angles ? (unif(rng) - 0.5) * 2.4 : aoa;
    p.aod_rad = random_angles ? (unif(rng) - 0.5) * 2.4 : aod;
    const double re = unif(rng) - 0.5, im = unif(rng) - 0.5;
    p.gain = cplx(re, im) / std::max(1e-3, std::sqrt(re * re + im * im)) *
             (0.5 + unif(rng));
    ch.paths.push_back(p);
  }

  const ValidatedConfig base = validate(raw);
  cvec v = aligned_tx_beamformer(ch, base, 0);

  // choose pilots where the frequency-domain response is well conditioned;
  // relative error against a beam null is meaningless
  cvec response(base.mtot());
  double peak = 0.0;
  for (int m = 0; m < base.mtot(); ++m) {
    response[m] = cdot(ttd_combiner(base, m), apply_channel(base, ch, pulse, v, m));
    peak = std::max(peak, std::abs(response[m]));
  }
  std::vector<int> healthy;
  for (int m = 0; m < base.mtot(); ++m)
    if (std::abs(response[m]) > 3e-2 * peak) healthy.push_back(m);
  std::vector<int> pilots;
  for (int draw = 0; draw < 64 && pilots.size() < 8; ++draw) {
    int cand = healthy[randint(0, static_cast<int>(healthy.size()) - 1)];
    if (std::find(pilots.begin(), pilots.end(), cand) == pilots.end()) pilots.push_back(cand);
  }
  std::sort(pilots.begin(), pilots.end());
  ValidatedConfig cfg = base.with_pilots(pilots);
  PilotGrid grid = make_pilots(cfg, pilots);
  return VerifyTrial{std::move(cfg), std::move(ch), std::move(v), std::move(grid), family};
}

VerifyOutcome run_verify_impl(const VerifySpec& spec, std::ostream* out, bool random_angles) {
  if (spec.trials < 1) fail(Err::InvalidArgument, "trials must be >= 1");
  const PulseShape pulse;
  if (out) *out << "trial,family,mtot,nrx,ntx,num_paths,rel_err\n";
  VerifyOutcome res;
  res.trials = spec.trials;
  for (int t = 0; t < spec.trials; ++t) {
    const int family = t % 3;
    VerifyTrial trial =
        make_verify_trial(derive_seed(spec.seed, 0, t, 7), family, random_angles, pulse);
    const double err =
        verify_freq_time_equivalence(trial.cfg, trial.ch, pulse, trial.v, trial.grid);
    res.max_rel_err = std::max(res.max_rel_err, err);
    if (out)
      *out << t << ',' << trial.family << ',' << trial.cfg.mtot() << ',' << trial.cfg.nrx()
           << ',' << trial.cfg.ntx() << ',' << trial.ch.num_paths() << ',' << csv_double(err)
           << "\n";
  }
  return res;
}

}  // namespace

VerifyOutcome run_verify(const VerifySpec& spec, std::ostream* out) {
  return run_verify_impl(spec, out, false);
}

VerifyOutcome run_verify_random_angles(const VerifySpec& spec, std::ostream* out) {
  return run_verify_impl(spec, out, true);
}

}  // namespace ttdbeam
