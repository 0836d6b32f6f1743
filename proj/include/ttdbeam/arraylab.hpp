#ifndef TTDBEAM_ARRAYLAB_HPP
#define TTDBEAM_ARRAYLAB_HPP

#include <utility>
#include <vector>

#include "ttdbeam/config.hpp"
#include "ttdbeam/types.hpp"

namespace ttdbeam {

// Uniform linear array, half-wavelength spacing at fc. Element n of the
// receive response is exp(-j*pi*n*(f/fc)*sin(angle)), n = 0..N-1.
cvec rx_steering(double angle, double f, int n_elem, double fc);
cvec tx_steering(double angle, double f, int n_elem, double fc);

/// TTD combiner at subcarrier m: element n is exp(j*2*pi*f_m*n*delta_tau).
cvec ttd_combiner(const ValidatedConfig& cfg, int m);

/// Dirichlet-kernel gain as a function of psi (period 2, peak n_rx at even
/// integers). Removable singularities return the limit value n_rx.
double gain_psi(double psi, int n_rx);

/// Receiver beamforming gain G(theta, f_m) = |w^H a_rx|^2 / n_rx, closed form.
double gain(const ValidatedConfig& cfg, double theta, int m);

/// Sounding-beam center of subcarrier m, in radians.
/// The approximate form solves psi = 2z under f_m/fc ~ 1; `exact` solves it
/// with the true frequency ratio (clamping to the nearer band edge when the
/// solution falls outside [-1, 1] in the sine domain).
double beam_center(const ValidatedConfig& cfg, int m, bool exact = false);

/// Largest half-width omega such that gain_psi(psi) >= (1-epsilon)*n_rx for
/// |psi| <= omega. Bisection on the main lobe to 1e-10.
double epsilon_beamwidth(double epsilon, int n_rx);

/// Brute-force Problem-1 evaluator: min over a uniform theta grid of
/// [-pi/2, pi/2] of max over the pilot set of gain(theta, m).
double min_max_gain(const ValidatedConfig& cfg, const std::vector<int>& pilots,
                    int grid_size);

struct DesignPoint {
  double delta_tau_s = 0;
  int mtot = 0;
  double epsilon = 0;  // gain floor is (1-epsilon)*n_rx
};

struct DesignContext {
  double fc_hz = 0;
  double bw_hz = 0;
  int nrx = 0;
};

/// Membership in the analytic design subset S_s. Strict mode requires
/// delta_tau >= 1/bw + 1/(2 fc) and mtot >= (bw*dtau + bw/(2 fc))/omega;
/// relaxed mode (bw << fc) requires delta_tau >= 1/bw and mtot >= ceil(1/omega).
bool in_design_subset(const DesignPoint& dp, const DesignContext& ctx, bool relaxed);

/// Smallest subcarrier count making (delta_tau, M) a member of S_s.
/// Throws DelayTooSmall when delta_tau violates the mode's delay condition.
int required_subcarriers(double delta_tau_s, double fc, double bw, double epsilon,
                         int nrx, bool relaxed);

/// Ordered (pilot index, beam center) pairs.
struct SoundingLUT {
  std::vector<std::pair<int, double>> entries;

  double angle_of(int m) const;
};

SoundingLUT build_lut(const ValidatedConfig& cfg, const std::vector<int>& pilots);

}  // namespace ttdbeam

#endif
