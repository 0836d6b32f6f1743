#ifndef TTDBEAM_ORACLE_HPP
#define TTDBEAM_ORACLE_HPP

#include "ttdbeam/channel.hpp"
#include "ttdbeam/phy.hpp"

namespace ttdbeam {

// Sample-level time-domain reference path. Everything here is built from the
// discrete taps directly; the TTD delay is folded into the tap delay, never
// applied as a frequency-domain rotation.

struct TapVector {
  cvec taps;  // h[i], i = 0..ncip-1
  int ncip = 0;
};

/// Discrete channel between tx element q and rx element n (1-based) via
/// `path`: tap i is g_l p(i Ts - tau_lqn) exp(j theta_lqn) with
/// tau_lqn = Gamma_lqn + (n-1)*delta_tau and theta_lqn = -2 pi fc tau_lqn + theta_q.
/// theta_q is the phase of the tx beamformer entry (applied by the caller's v).
/// With enforce_cp, throws CpViolation when the tap support does not fit the CP.
TapVector discrete_channel_taps(const PathComponent& path, int q, int n,
                                const ValidatedConfig& cfg, const PulseShape& p,
                                bool enforce_cp = true);

/// Full time-domain simulation: IDFT of X, CP insertion, per-(l,q,n) linear
/// convolution with the discrete taps (tx phases from v folded in), summation
/// with rho, optional white time-domain noise, CP removal, DFT.
/// With enforce_cp=false the simulation proceeds even when taps spill past the
/// CP, which is how the CP-condition necessity is demonstrated.
ReceivedSymbol simulate_time_domain(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                    const PulseShape& p, const cvec& v, const PilotGrid& x,
                                    NoiseSeed noise, bool enforce_cp = true);

/// Max over the active pilot set of |Y_td[m] - Y_fd[m]| / max(|Y_fd[m]|, 1e-30),
/// noiseless. Checks the per-subcarrier frequency-domain model against the
/// time-domain construction.
double verify_freq_time_equivalence(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const PilotGrid& x,
                           bool enforce_cp = true);

/// Literal cyclic-matrix route for small mtot: builds the combined circulant
/// first row and multiplies. Used by tests against the streaming convolution.
cvec circulant_time_domain(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const PilotGrid& x);

/// Unnormalized DFT / normalized IDFT pair used throughout the oracle.
cvec dft(const cvec& x);
cvec idft(const cvec& x);

}  // namespace ttdbeam

#endif
