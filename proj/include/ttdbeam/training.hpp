#ifndef TTDBEAM_TRAINING_HPP
#define TTDBEAM_TRAINING_HPP

#include <cstdint>
#include <vector>

#include "ttdbeam/arraylab.hpp"
#include "ttdbeam/phy.hpp"

namespace ttdbeam {

struct TrainingResult {
  int m_best = -1;            // winning pilot index (or PAA beam index)
  double aoa_estimate = 0.0;  // radians
  std::vector<double> rsrp;   // per pilot / per beam
  int symbols_used = 0;
};

/// Resource blocks for each pilot: pilot index plus 6 neighbors per side,
/// clipped, ascending. blocks[i] belongs to pilots[i].
std::vector<std::vector<int>> pilot_blocks(const std::vector<int>& pilots, int mtot);

/// RSRP of each pilot: sum over its block of |Y[i]|^2.
std::vector<double> rsrp(const ReceivedSymbol& y, const std::vector<std::vector<int>>& blocks);

/// One-shot LUT estimate: argmax RSRP (ties to the smallest pilot index),
/// angle from the LUT. symbols_used = 1.
TrainingResult estimate_aoa(const std::vector<double>& rsrp_values, const SoundingLUT& lut);

/// Phased-array benchmark: K sequential symbols, symbol k combined with the
/// frequency-flat AWV exp(j 2 pi n k / K); wideband RSRP per beam over the
/// pilot set; best k maps to asin of the reduced -2k/K. symbols_used = K.
TrainingResult paa_dft_training(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                const PulseShape& p, const cvec& v, int k_beams,
                                NoiseSeed noise);

/// Beam-to-angle map of the PAA sweep (principal solution, argmax-consistent).
double paa_beam_angle(int k, int k_beams);

/// Normalized post-training gain |a_rx(est)^H a_rx(truth)|^2 / nrx^2 at fc.
double post_training_gain(double estimate_rad, double true_aoa_rad, int nrx, double fc);

/// Post-transmitter-beam SNR over the whole band:
/// sum_m ||H[m] v||^2 / sum_m E|N[m]|^2.
double snr(const ValidatedConfig& cfg, const MultipathChannel& ch, const PulseShape& p,
           const cvec& v);

/// (1/mtot) sum_m log2(1 + |w(m)^H H[m] v|^2 / (nrx * noise_var)) with a caller
/// combiner per subcarrier (unit power expected).
double spectral_efficiency(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const CombinerFn& w);

/// Spectral efficiency with the trained frequency-flat phased-array combiner
/// a_rx(estimate, fc)/sqrt(nrx).
double spectral_efficiency_trained(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                   const PulseShape& p, const cvec& v, double estimate_rad);

}  // namespace ttdbeam

#endif
