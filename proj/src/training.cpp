#include "ttdbeam/training.hpp"

#include <algorithm>
#include <cmath>

#include "ttdbeam/oracle.hpp"

namespace ttdbeam {

std::vector<std::vector<int>> pilot_blocks(const std::vector<int>& pilots, int mtot) {
  std::vector<std::vector<int>> blocks;
  blocks.reserve(pilots.size());
  for (int p : pilots) blocks.push_back(resource_block_expand({p}, mtot));
  return blocks;
}

std::vector<double> rsrp(const ReceivedSymbol& y, const std::vector<std::vector<int>>& blocks) {
  if (blocks.empty()) fail(Err::EmptyBlock, "rsrp needs at least one block");
  std::vector<double> out(blocks.size(), 0.0);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) fail(Err::EmptyBlock, "block " + std::to_string(b) + " is empty");
    for (int idx : blocks[b]) {
      if (idx < 0 || idx >= static_cast<int>(y.y.size()))
        fail(Err::IndexOutOfRange, "block index " + std::to_string(idx));
      out[b] += std::norm(y.y[idx]);
    }
  }
  return out;
}

TrainingResult estimate_aoa(const std::vector<double>& rsrp_values, const SoundingLUT& lut) {
  if (rsrp_values.size() != lut.entries.size())
    fail(Err::InvalidArgument, "rsrp and LUT must be index-aligned");
  size_t best = 0;
  for (size_t i = 1; i < rsrp_values.size(); ++i)
    if (rsrp_values[i] > rsrp_values[best]) best = i;  // ties keep the smallest index
  TrainingResult r;
  r.m_best = lut.entries[best].first;
  r.aoa_estimate = lut.entries[best].second;
  r.rsrp = rsrp_values;
  r.symbols_used = 1;
  return r;
}

double paa_beam_angle(int k, int k_beams) {
  double r = std::fmod(2.0 * k / k_beams + 1.0, 2.0);
  if (r < 0) r += 2.0;
  return std::asin(-(r - 1.0));
}

TrainingResult paa_dft_training(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                const PulseShape& p, const cvec& v, int k_beams,
                                NoiseSeed noise) {
  if (k_beams < 1) fail(Err::InvalidArgument, "k_beams must be >= 1");
  const PilotGrid grid = make_pilots(cfg, cfg.pilots());
  std::vector<double> wideband(k_beams, 0.0);
  for (int k = 0; k < k_beams; ++k) {
    cvec w(cfg.nrx());
    for (int n = 0; n < cfg.nrx(); ++n)
      w[n] = std::polar(1.0, 2.0 * kPi * n * k / static_cast<double>(k_beams));
    NoiseSeed symbol_noise = noise ? NoiseSeed(*noise + static_cast<uint64_t>(k)) : noise;
    const ReceivedSymbol y = receive_with_combiner(
        cfg, ch, p, v, grid, [&w](int) { return w; }, symbol_noise);
    double acc = 0.0;
    for (int m : grid.active) acc += std::norm(y.y[m]);
    wideband[k] = acc;
  }
  int best = 0;
  for (int k = 1; k < k_beams; ++k)
    if (wideband[k] > wideband[best]) best = k;
  TrainingResult r;
  r.m_best = best;
  r.aoa_estimate = paa_beam_angle(best, k_beams);
  r.rsrp = std::move(wideband);
  r.symbols_used = k_beams;
  return r;
}

double post_training_gain(double estimate_rad, double true_aoa_rad, int nrx, double fc) {
  const cvec a_est = rx_steering(estimate_rad, fc, nrx, fc);
  const cvec a_true = rx_steering(true_aoa_rad, fc, nrx, fc);
  const double num = std::norm(cdot(a_est, a_true));
  return num / (static_cast<double>(nrx) * nrx);
}

double snr(const ValidatedConfig& cfg, const MultipathChannel& ch, const PulseShape& p,
           const cvec& v) {
  if (ch.paths.empty()) return 0.0;
  double num = 0.0;
  for (int m = 0; m < cfg.mtot(); ++m) num += norm2(apply_channel(cfg, ch, p, v, m));
  return num / (cfg.mtot() * cfg.noise_variance());
}

double spectral_efficiency(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const CombinerFn& w) {
  if (ch.paths.empty()) return 0.0;
  const double nv = cfg.noise_variance();
  double acc = 0.0;
  for (int m = 0; m < cfg.mtot(); ++m) {
    const double sig = std::norm(cdot(w(m), apply_channel(cfg, ch, p, v, m)));
    acc += std::log2(1.0 + sig / (cfg.nrx() * nv));
  }
  return acc / cfg.mtot();
}

double spectral_efficiency_trained(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                   const PulseShape& p, const cvec& v, double estimate_rad) {
  cvec w = rx_steering(estimate_rad, cfg.fc(), cfg.nrx(), cfg.fc());
  const double inv = 1.0 / std::sqrt(static_cast<double>(cfg.nrx()));
  for (cplx& e : w) e *= inv;
  return spectral_efficiency(cfg, ch, p, v, [&w](int) { return w; });
}

}  // namespace ttdbeam
