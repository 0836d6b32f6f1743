#ifndef TTDBEAM_PHY_HPP
#define TTDBEAM_PHY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ttdbeam/channel.hpp"
#include "ttdbeam/config.hpp"
#include "ttdbeam/types.hpp"

namespace ttdbeam {

/// One OFDM training symbol in the frequency domain. Zero off the active set;
/// total power sums to mtot.
struct PilotGrid {
  cvec x;                   // length mtot
  std::vector<int> active;  // indices with nonzero power, ascending
};

/// Equal-power pilots on `set`, amplitude sqrt(mtot/|set|), phase 0.
PilotGrid make_pilots(const ValidatedConfig& cfg, const std::vector<int>& set);

/// Stride subcarrier selection: {m*R | 0 <= m < m_beams}, R = mtot_total/m_beams.
/// Throws NonDivisible when m_beams does not divide mtot_total.
std::vector<int> select_pilot_subcarriers(int mtot_total, int m_beams);

/// Union of each pilot with its 12 neighbors (6 per side, clipped at band
/// edges, no wraparound), duplicates merged.
std::vector<int> resource_block_expand(const std::vector<int>& set, int mtot);

struct ReceivedSymbol {
  cvec y;  // length mtot
  double noise_variance = 0.0;
};

/// noiseless when empty; otherwise the per-symbol noise seed.
using NoiseSeed = std::optional<uint64_t>;

/// Per-subcarrier combiner (length nrx) used when receiving symbol m.
using CombinerFn = std::function<cvec(int m)>;

/// Received symbol with an arbitrary analog combiner:
/// Y[m] = w(m)^H H[m] v X[m] + N[m], noise CN(0, n0*bw/(2*mtot)) i.i.d.
/// Requires the CP condition to hold.
ReceivedSymbol receive_with_combiner(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                     const PulseShape& p, const cvec& v, const PilotGrid& x,
                                     const CombinerFn& w, NoiseSeed noise);

/// Receive path with the TTD combiner.
ReceivedSymbol receive_symbol(const ValidatedConfig& cfg, const MultipathChannel& ch,
                              const PulseShape& p, const cvec& v, const PilotGrid& x,
                              NoiseSeed noise);

}  // namespace ttdbeam

#endif
