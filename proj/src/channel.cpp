#include "ttdbeam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ttdbeam/arraylab.hpp"

namespace ttdbeam {

double channel_rho(const ValidatedConfig& cfg, const MultipathChannel& ch) {
  if (ch.paths.empty()) fail(Err::EmptyChannel, "channel has no paths");
  return std::sqrt(static_cast<double>(cfg.ntx()) * cfg.nrx() / ch.num_paths());
}

// sin(pi x)/(pi x) with the argument reduced against the nearest integer, so
// integer samples are exact zeros
static double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double r = x - std::round(x);
  const double s = (static_cast<long long>(std::round(x)) % 2 == 0) ? 1.0 : -1.0;
  return s * std::sin(kPi * r) / (kPi * x);
}

double pulse_value(const PulseShape& p, double t, double ts) {
  if (p.span < 2 || p.span % 2 != 0)
    fail(Err::InvalidSpec, "pulse span must be even and >= 2");
  const double half = p.span * ts / 2.0;
  if (std::abs(t) > half) return 0.0;
  const double u = t / ts;
  switch (p.kind) {
    case PulseKind::IdealSinc:
      return sinc(u);
    case PulseKind::RaisedCosine: {
      const double b = p.rolloff;
      if (b == 0.0) return sinc(u);
      // singular point t = Ts/(2 rolloff); L'Hopital limit
      if (std::abs(std::abs(2.0 * b * u) - 1.0) < 1e-8)
        return (kPi / 4.0) * sinc(1.0 / (2.0 * b));
      return sinc(u) * std::cos(kPi * b * u) / (1.0 - (2.0 * b * u) * (2.0 * b * u));
    }
  }
  return 0.0;
}

double path_delay(const PathComponent& path, int q, int n, double fc) {
  if (q < 1 || n < 1) fail(Err::InvalidArgument, "element indices are 1-based");
  const double lam_over_2c = 1.0 / (2.0 * fc);  // lambda_c/(2c) = 1/(2 fc)
  return path.delay_s - (q - 1) * lam_over_2c * std::sin(path.aod_rad) +
         (n - 1) * lam_over_2c * std::sin(path.aoa_rad);
}

cplx pulse_window_dft(const PulseShape& p, double tau, int mtot, double ts, int m) {
  const double u = tau / ts;
  int i_lo = std::max(0, static_cast<int>(std::ceil(u - p.span / 2.0)));
  int i_hi = std::min(mtot - 1, static_cast<int>(std::floor(u + p.span / 2.0)));
  cplx s = 0.0;
  for (int i = i_lo; i <= i_hi; ++i) {
    double pv = pulse_value(p, i * ts - tau, ts);
    if (pv == 0.0) continue;
    // exact integer reduction keeps the DFT phase identical across systems
    // whose (i*m mod mtot)/mtot ratios coincide
    long long k = (static_cast<long long>(i) * m) % mtot;
    s += pv * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / mtot);
  }
  return s;
}

CMat freq_channel(const ValidatedConfig& cfg, const MultipathChannel& ch,
                  const PulseShape& p, int m) {
  const double f = cfg.subcarrier_frequency(m);
  if (!check_cp_condition(cfg, ch))
    fail(Err::CpViolation, "channel delays exceed the cyclic prefix budget");
  const double rho = channel_rho(cfg, ch);
  CMat h(cfg.nrx(), cfg.ntx());
  for (const PathComponent& path : ch.paths) {
    const cplx g_tilde =
        path.gain * std::polar(1.0, -2.0 * kPi * std::fmod(cfg.fc() * path.delay_s, 1.0));
    const cplx scale = rho * g_tilde * pulse_window_dft(p, path.delay_s, cfg.mtot(), cfg.ts(), m);
    const cvec ar = rx_steering(path.aoa_rad, f, cfg.nrx(), cfg.fc());
    const cvec at = tx_steering(path.aod_rad, f, cfg.ntx(), cfg.fc());
    for (int r = 0; r < cfg.nrx(); ++r) {
      const cplx row = scale * ar[r];
      for (int c = 0; c < cfg.ntx(); ++c) h(r, c) += row * std::conj(at[c]);
    }
  }
  return h;
}

cvec apply_channel(const ValidatedConfig& cfg, const MultipathChannel& ch,
                   const PulseShape& p, const cvec& v, int m) {
  const double f = cfg.subcarrier_frequency(m);
  if (static_cast<int>(v.size()) != cfg.ntx())
    fail(Err::InvalidArgument, "beamformer length must equal ntx");
  const double rho = channel_rho(cfg, ch);
  cvec out(cfg.nrx());
  for (const PathComponent& path : ch.paths) {
    const cplx g_tilde =
        path.gain * std::polar(1.0, -2.0 * kPi * std::fmod(cfg.fc() * path.delay_s, 1.0));
    const cvec at = tx_steering(path.aod_rad, f, cfg.ntx(), cfg.fc());
    const cplx scale = rho * g_tilde *
                       pulse_window_dft(p, path.delay_s, cfg.mtot(), cfg.ts(), m) * cdot(at, v);
    const cvec ar = rx_steering(path.aoa_rad, f, cfg.nrx(), cfg.fc());
    for (int r = 0; r < cfg.nrx(); ++r) out[r] += scale * ar[r];
  }
  return out;
}

MultipathChannel generate_paths(uint64_t seed, const GenSpec& spec) {
  if (spec.num_paths < 1) fail(Err::InvalidSpec, "num_paths must be >= 1");
  if (spec.delay_max_s < spec.delay_min_s || spec.delay_min_s < 0)
    fail(Err::InvalidSpec, "invalid delay range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  MultipathChannel ch;
  ch.paths.resize(spec.num_paths);
  for (int l = 0; l < spec.num_paths; ++l) {
    PathComponent& path = ch.paths[l];
    path.delay_s = spec.delay_min_s + (spec.delay_max_s - spec.delay_min_s) * unif(rng);
    if (spec.angle_dist == AngleDist::Fixed) {
      path.aoa_rad = spec.fixed_aoa_rad;
      path.aod_rad = spec.fixed_aod_rad;
    } else {
      path.aoa_rad = (unif(rng) - 0.5) * kPi;
      path.aod_rad = (unif(rng) - 0.5) * kPi;
    }
    path.gain = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
    if (spec.gain_profile == GainProfile::GaussianExpDecay && spec.num_paths > 1) {
      double att_db = spec.decay_db * l / (spec.num_paths - 1);
      path.gain *= std::pow(10.0, -att_db / 20.0);
    }
  }
  double total = 0.0;
  for (const PathComponent& path : ch.paths) total += std::norm(path.gain);
  if (total <= 0.0) fail(Err::InvalidSpec, "degenerate gain draw");
  const double scale = 1.0 / std::sqrt(total);
  for (PathComponent& path : ch.paths) path.gain *= scale;
  return ch;
}

static constexpr char kChannelHeader[] = "gain_re,gain_im,delay_s,aod_rad,aoa_rad";

MultipathChannel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open channel file: " + path);
  MultipathChannel ch;
  std::string line;
  int record = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("gain_re", 0) == 0) continue;  // header row optional
    }
    ++record;
    std::istringstream ss(line);
    double fields[5];
    char comma;
    for (int k = 0; k < 5; ++k) {
      if (!(ss >> fields[k]))
        fail(Err::ParseError,
             "channel " + path + ": record " + std::to_string(record) + ": bad field " +
                 std::to_string(k + 1));
      if (k < 4 && !(ss >> comma))
        fail(Err::ParseError,
             "channel " + path + ": record " + std::to_string(record) + ": expected 5 fields");
    }
    ch.paths.push_back(PathComponent{cplx(fields[0], fields[1]), fields[2], fields[3], fields[4]});
  }
  if (ch.paths.empty()) fail(Err::EmptyChannel, "channel file has no path records: " + path);
  return ch;
}

void save_channel(const MultipathChannel& ch, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Err::IoError, "cannot write channel file: " + path);
  out << kChannelHeader << "\n";
  char buf[192];
  for (const PathComponent& p : ch.paths) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.gain.real(),
                  p.gain.imag(), p.delay_s, p.aod_rad, p.aoa_rad);
    out << buf;
  }
}

cvec aligned_tx_beamformer(const MultipathChannel& ch, const ValidatedConfig& cfg,
                           int path_index) {
  if (path_index < 0 || path_index >= ch.num_paths())
    fail(Err::IndexOutOfRange, "path index " + std::to_string(path_index));
  // equals a_tx(aod, fc), which makes a_tx^H(aod, fc) v = ntx exactly
  const double s = std::sin(ch.paths[path_index].aod_rad);
  cvec v(cfg.ntx());
  for (int q = 0; q < cfg.ntx(); ++q) v[q] = std::polar(1.0, -kPi * q * s);
  return v;
}

}  // namespace ttdbeam
