#ifndef TTDBEAM_CHANNEL_HPP
#define TTDBEAM_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ttdbeam/config.hpp"
#include "ttdbeam/types.hpp"

namespace ttdbeam {

struct PathComponent {
  cplx gain;          // g_l
  double delay_s;     // tau_l >= 0
  double aod_rad;     // departure angle in [-pi/2, pi/2]
  double aoa_rad;     // arrival angle in [-pi/2, pi/2]
};

struct MultipathChannel {
  std::vector<PathComponent> paths;

  int num_paths() const { return static_cast<int>(paths.size()); }
};

/// sqrt(ntx*nrx/L); recomputed, never stored.
double channel_rho(const ValidatedConfig& cfg, const MultipathChannel& ch);

enum class PulseKind { IdealSinc, RaisedCosine };

struct PulseShape {
  PulseKind kind = PulseKind::IdealSinc;
  double rolloff = 0.25;  // raised-cosine only
  int span = 32;          // truncated support in samples, even
};

/// Pulse impulse response p_c(t), exactly zero for |t| > span*Ts/2.
double pulse_value(const PulseShape& p, double t, double ts);

/// Propagation delay from tx element q to rx element n (1-based) via `path`.
double path_delay(const PathComponent& path, int q, int n, double fc);

/// Dense row-major complex matrix (nrx x ntx).
struct CMat {
  int rows = 0, cols = 0;
  cvec a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  cplx& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const cplx& operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

/// DFT of the sampled pulse at delay tau over the symbol window:
/// sum_i exp(-j 2 pi i m / mtot) p(i Ts - tau), i restricted to the truncated
/// support intersected with [0, mtot).
cplx pulse_window_dft(const PulseShape& p, double tau, int mtot, double ts, int m);

/// Frequency-domain channel matrix H[m]: rank-1 sum over paths of
/// rho * g~_l * pulse_window_dft * a_rx a_tx^H at f_m.
CMat freq_channel(const ValidatedConfig& cfg, const MultipathChannel& ch,
                  const PulseShape& p, int m);

/// H[m] * v without materializing H (rank-1 per-path evaluation).
cvec apply_channel(const ValidatedConfig& cfg, const MultipathChannel& ch,
                   const PulseShape& p, const cvec& v, int m);

enum class AngleDist { UniformAngle, Fixed };
enum class GainProfile { GaussianFlat, GaussianExpDecay };

struct GenSpec {
  int num_paths = 1;
  double delay_min_s = 0.0;
  double delay_max_s = 0.0;
  AngleDist angle_dist = AngleDist::UniformAngle;
  double fixed_aoa_rad = 0.0;  // AngleDist::Fixed
  double fixed_aod_rad = 0.0;
  GainProfile gain_profile = GainProfile::GaussianFlat;
  double decay_db = 10.0;  // total decay across paths for GaussianExpDecay
};

/// Deterministic synthetic channel: delays uniform in range, gains complex
/// Gaussian with the requested power profile, total power normalized to 1.
MultipathChannel generate_paths(uint64_t seed, const GenSpec& spec);

/// Channel file I/O: CSV with header gain_re,gain_im,delay_s,aod_rad,aoa_rad,
/// one record per path, 17 significant digits on write.
MultipathChannel load_channel(const std::string& path);
void save_channel(const MultipathChannel& ch, const std::string& path);

/// Phase-only transmit beamformer matched at fc to the AoD of path l:
/// [v]_q = exp(j pi q sin(aod_l)), so a_tx(aod_l, fc)^H v = ntx.
cvec aligned_tx_beamformer(const MultipathChannel& ch, const ValidatedConfig& cfg,
                           int path_index);

}  // namespace ttdbeam

#endif
