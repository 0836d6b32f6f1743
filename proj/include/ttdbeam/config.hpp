#ifndef TTDBEAM_CONFIG_HPP
#define TTDBEAM_CONFIG_HPP

#include <string>
#include <vector>

#include "ttdbeam/types.hpp"

namespace ttdbeam {

struct MultipathChannel;  // channel.hpp

/// Raw system parameters as read from a config file or assembled by a caller.
/// The sample duration is always 1/bw_hz and is never stored independently.
struct SystemConfig {
  double fc_hz = 28e9;          // carrier frequency
  double bw_hz = 400e6;         // bandwidth (= 1/Ts)
  int mtot = 2048;              // total subcarriers, even
  int ncp = -1;                 // cyclic prefix length in samples; -1 -> mtot/8
  int ntx = 1;                  // transmit antennas
  int nrx = 1;                  // receive antennas
  double delta_tau_s = 2.5e-9;  // TTD delay tap spacing
  double n0 = 1.0;              // noise spectral-density parameter
  std::vector<int> pilot_set;   // strictly increasing, < mtot; empty -> all
};

/// Immutable configuration that passed all structural checks. Safe to share
/// across threads.
class ValidatedConfig {
 public:
  double fc() const { return fc_; }
  double bw() const { return bw_; }
  double ts() const { return 1.0 / bw_; }
  int mtot() const { return mtot_; }
  int ncp() const { return ncp_; }
  int ntx() const { return ntx_; }
  int nrx() const { return nrx_; }
  double delta_tau() const { return delta_tau_; }
  double n0() const { return n0_; }
  const std::vector<int>& pilots() const { return pilots_; }

  /// RF frequency of subcarrier m. Indices at or above mtot/2 map to the
  /// negative half of the band.
  double subcarrier_frequency(int m) const;

  /// Per-subcarrier noise variance n0*bw/(2*mtot).
  double noise_variance() const { return n0_ * bw_ / (2.0 * mtot_); }

  /// Copy with a different pilot set (re-checked).
  ValidatedConfig with_pilots(const std::vector<int>& pilots) const;
  /// Copy with a different noise parameter.
  ValidatedConfig with_n0(double n0) const;

  friend ValidatedConfig validate(const SystemConfig& raw);

 private:
  ValidatedConfig() = default;
  double fc_ = 0, bw_ = 0, delta_tau_ = 0, n0_ = 0;
  int mtot_ = 0, ncp_ = 0, ntx_ = 0, nrx_ = 0;
  std::vector<int> pilots_;
};

/// Checks all structural invariants and returns the immutable config.
/// Throws Error with code InvalidDelaySpacing, InvalidPilotSet,
/// OddSubcarrierCount or InvalidArgument.
ValidatedConfig validate(const SystemConfig& raw);

/// Cyclic-prefix predicate: true iff ncp*ts strictly exceeds the largest
/// cumulative propagation delay plus the largest TTD tap delay. An empty
/// channel passes by convention.
bool check_cp_condition(const ValidatedConfig& cfg, const MultipathChannel& ch);

/// JSON config file I/O. Keys: fc_hz, bw_hz, mtot, ncp (optional), ntx, nrx,
/// delta_tau_s, n0, pilot_set (array or {start, stride, count}).
SystemConfig load_config_file(const std::string& path);
void save_config_file(const SystemConfig& cfg, const std::string& path);

}  // namespace ttdbeam

#endif
