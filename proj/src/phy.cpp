#include "ttdbeam/phy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "ttdbeam/arraylab.hpp"

namespace ttdbeam {

PilotGrid make_pilots(const ValidatedConfig& cfg, const std::vector<int>& set) {
  if (set.empty()) fail(Err::EmptyPilotSet, "make_pilots needs a nonempty set");
  PilotGrid grid;
  grid.x.assign(cfg.mtot(), cplx(0.0, 0.0));
  grid.active = set;
  std::sort(grid.active.begin(), grid.active.end());
  grid.active.erase(std::unique(grid.active.begin(), grid.active.end()), grid.active.end());
  const double amp = std::sqrt(static_cast<double>(cfg.mtot()) / grid.active.size());
  for (int m : grid.active) {
    if (m < 0 || m >= cfg.mtot())
      fail(Err::InvalidPilotSet, "pilot index " + std::to_string(m) + " out of range");
    grid.x[m] = amp;
  }
  return grid;
}

std::vector<int> select_pilot_subcarriers(int mtot_total, int m_beams) {
  if (m_beams < 1 || mtot_total < 1) fail(Err::InvalidArgument, "counts must be positive");
  if (mtot_total % m_beams != 0)
    fail(Err::NonDivisible, std::to_string(m_beams) + " beams do not divide " +
                                std::to_string(mtot_total) + " subcarriers");
  const int stride = mtot_total / m_beams;
  std::vector<int> set(m_beams);
  for (int m = 0; m < m_beams; ++m) set[m] = m * stride;
  return set;
}

std::vector<int> resource_block_expand(const std::vector<int>& set, int mtot) {
  std::set<int> acc;
  for (int p : set)
    for (int d = -6; d <= 6; ++d) {
      int idx = p + d;
      if (idx >= 0 && idx < mtot) acc.insert(idx);
    }
  return {acc.begin(), acc.end()};
}

ReceivedSymbol receive_with_combiner(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                     const PulseShape& p, const cvec& v, const PilotGrid& x,
                                     const CombinerFn& w, NoiseSeed noise) {
  if (!check_cp_condition(cfg, ch))
    fail(Err::CpViolation, "channel delays exceed the cyclic prefix budget");
  if (static_cast<int>(x.x.size()) != cfg.mtot())
    fail(Err::InvalidArgument, "pilot grid does not match mtot");
  ReceivedSymbol out;
  out.y.assign(cfg.mtot(), cplx(0.0, 0.0));
  out.noise_variance = noise ? cfg.noise_variance() : 0.0;
  for (int m : x.active) {
    const cvec hv = apply_channel(cfg, ch, p, v, m);
    out.y[m] = cdot(w(m), hv) * x.x[m];
  }
  if (noise) {
    std::mt19937_64 rng(*noise);
    std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.noise_variance() / 2.0));
    for (int m = 0; m < cfg.mtot(); ++m) out.y[m] += cplx(gauss(rng), gauss(rng));
  }
  return out;
}

ReceivedSymbol receive_symbol(const ValidatedConfig& cfg, const MultipathChannel& ch,
                              const PulseShape& p, const cvec& v, const PilotGrid& x,
                              NoiseSeed noise) {
  return receive_with_combiner(
      cfg, ch, p, v, x, [&cfg](int m) { return ttd_combiner(cfg, m); }, noise);
}

}  // namespace ttdbeam
