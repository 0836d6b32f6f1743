#include "ttdbeam/arraylab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ttdbeam {

namespace {

// reduce x into [-1, 1): mod(x + 1, 2) - 1
double reduce_mod2(double x) {
  double r = std::fmod(x + 1.0, 2.0);
  if (r < 0) r += 2.0;
  return r - 1.0;
}

}  // namespace

cvec rx_steering(double angle, double f, int n_elem, double fc) {
  cvec a(n_elem);
  const double step = -kPi * (f / fc) * std::sin(angle);
  for (int n = 0; n < n_elem; ++n) a[n] = std::polar(1.0, step * n);
  return a;
}

cvec tx_steering(double angle, double f, int n_elem, double fc) {
  return rx_steering(angle, f, n_elem, fc);
}

cvec ttd_combiner(const ValidatedConfig& cfg, int m) {
  const double f = cfg.subcarrier_frequency(m);
  cvec w(cfg.nrx());
  for (int n = 0; n < cfg.nrx(); ++n) {
    // keep the huge f*delta_tau phase accurate: reduce the cycle count mod 1
    double cycles = f * cfg.delta_tau() * n;
    w[n] = std::polar(1.0, 2.0 * kPi * std::fmod(cycles, 1.0));
  }
  return w;
}

double gain_psi(double psi, int n_rx) {
  double r = std::fmod(psi, 2.0);  // |sin| is invariant under the 2-shift
  double den = std::sin(kPi * r / 2.0);
  if (std::abs(den) < 1e-12) return static_cast<double>(n_rx);
  double num = std::sin(n_rx * kPi * r / 2.0);
  return num * num / (n_rx * den * den);
}

double gain(const ValidatedConfig& cfg, double theta, int m) {
  const double f = cfg.subcarrier_frequency(m);
  // reduce the large delay term first; adding sin(theta) afterwards keeps the
  // residue accurate to machine precision
  const double psi = std::fmod(2.0 * f * cfg.delta_tau(), 2.0) +
                     (f / cfg.fc()) * std::sin(theta);
  return gain_psi(psi, cfg.nrx());
}

double beam_center(const ValidatedConfig& cfg, int m, bool exact) {
  const double f = cfg.subcarrier_frequency(m);
  // Peak condition psi = 2z gives sin(theta) = -(fc/f) * reduce(2 f dtau).
  // The approximate form drops the fc/f ratio. Note the sign: the reduced
  // residue enters negated, which is what the numeric argmax confirms.
  const double r = reduce_mod2(2.0 * f * cfg.delta_tau());
  if (!exact) return std::asin(-r);
  double s = -r * (cfg.fc() / f);
  if (s >= -1.0 && s <= 1.0) return std::asin(s);
  // peak aliased outside the visible region: closer band edge in psi distance
  auto psi_dist = [&](double sv) {
    double p = 2.0 * f * cfg.delta_tau() + (f / cfg.fc()) * sv;
    return std::abs(reduce_mod2(p));
  };
  return psi_dist(1.0) <= psi_dist(-1.0) ? kPi / 2 : -kPi / 2;
}

double epsilon_beamwidth(double epsilon, int n_rx) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail(Err::InvalidArgument, "epsilon must be in (0,1)");
  if (n_rx < 2) fail(Err::InvalidArgument, "epsilon_beamwidth requires n_rx >= 2");
  const double floor = (1.0 - epsilon) * n_rx;
  // G is strictly decreasing across the main lobe, first null at 2/n_rx
  double lo = 0.0, hi = 2.0 / n_rx;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (gain_psi(mid, n_rx) >= floor)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double min_max_gain(const ValidatedConfig& cfg, const std::vector<int>& pilots,
                    int grid_size) {
  if (pilots.empty()) fail(Err::EmptyPilotSet, "min_max_gain needs at least one pilot");
  if (grid_size < 2) fail(Err::InvalidArgument, "grid_size must be >= 2");
  // hoist per-pilot constants; theta only enters through sin(theta)
  std::vector<double> base(pilots.size()), slope(pilots.size());
  for (size_t i = 0; i < pilots.size(); ++i) {
    double f = cfg.subcarrier_frequency(pilots[i]);
    base[i] = 2.0 * f * cfg.delta_tau();
    slope[i] = f / cfg.fc();
  }
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_size; ++k) {
    double theta = -kPi / 2 + kPi * k / (grid_size - 1);
    double s = std::sin(theta);
    double best = 0.0;
    for (size_t i = 0; i < pilots.size(); ++i)
      best = std::max(best, gain_psi(base[i] + slope[i] * s, cfg.nrx()));
    worst = std::min(worst, best);
  }
  return worst;
}

bool in_design_subset(const DesignPoint& dp, const DesignContext& ctx, bool relaxed) {
  if (dp.mtot < 1) fail(Err::InvalidArgument, "mtot must be >= 1");
  const double omega = epsilon_beamwidth(dp.epsilon, ctx.nrx);
  if (relaxed) {
    return dp.delta_tau_s >= 1.0 / ctx.bw_hz &&
           dp.mtot >= std::ceil(1.0 / omega);
  }
  return dp.delta_tau_s >= 1.0 / ctx.bw_hz + 1.0 / (2.0 * ctx.fc_hz) &&
         dp.mtot >= (ctx.bw_hz * dp.delta_tau_s + ctx.bw_hz / (2.0 * ctx.fc_hz)) / omega;
}

int required_subcarriers(double delta_tau_s, double fc, double bw, double epsilon,
                         int nrx, bool relaxed) {
  const double omega = epsilon_beamwidth(epsilon, nrx);
  if (relaxed) {
    if (delta_tau_s < 1.0 / bw)
      fail(Err::DelayTooSmall, "relaxed design needs delta_tau >= 1/bw");
    return static_cast<int>(std::ceil(1.0 / omega));
  }
  if (delta_tau_s < 1.0 / bw + 1.0 / (2.0 * fc))
    fail(Err::DelayTooSmall, "strict design needs delta_tau >= 1/bw + 1/(2 fc)");
  return static_cast<int>(std::ceil((bw * delta_tau_s + bw / (2.0 * fc)) / omega));
}

double SoundingLUT::angle_of(int m) const {
  for (const auto& [idx, angle] : entries)
    if (idx == m) return angle;
  fail(Err::IndexOutOfRange, "pilot " + std::to_string(m) + " not in LUT");
}

SoundingLUT build_lut(const ValidatedConfig& cfg, const std::vector<int>& pilots) {
  if (pilots.empty()) fail(Err::EmptyPilotSet, "build_lut needs at least one pilot");
  SoundingLUT lut;
  lut.entries.reserve(pilots.size());
  for (int m : pilots) lut.entries.emplace_back(m, beam_center(cfg, m));
  std::sort(lut.entries.begin(), lut.entries.end());
  return lut;
}

}  // namespace ttdbeam
