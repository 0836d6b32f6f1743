#include "ttdbeam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ttdbeam/arraylab.hpp"

namespace ttdbeam {

cvec dft(const cvec& x) {
  const int m_tot = static_cast<int>(x.size());
  cvec out(m_tot);
  for (int m = 0; m < m_tot; ++m) {
    cplx acc = 0.0;
    for (int i = 0; i < m_tot; ++i) {
      long long k = (static_cast<long long>(i) * m) % m_tot;
      acc += x[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) / m_tot);
    }
    out[m] = acc;
  }
  return out;
}

cvec idft(const cvec& x) {
  const int m_tot = static_cast<int>(x.size());
  cvec out(m_tot);
  for (int i = 0; i < m_tot; ++i) {
    cplx acc = 0.0;
    for (int m = 0; m < m_tot; ++m) {
      long long k = (static_cast<long long>(i) * m) % m_tot;
      acc += x[m] * std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / m_tot);
    }
    out[i] = acc / static_cast<double>(m_tot);
  }
  return out;
}

TapVector discrete_channel_taps(const PathComponent& path, int q, int n,
                                const ValidatedConfig& cfg, const PulseShape& p,
                                bool enforce_cp) {
  const double ts = cfg.ts();
  const double tau = path_delay(path, q, n, cfg.fc()) + (n - 1) * cfg.delta_tau();
  const double u = tau / ts;
  const int ncip = std::max(0, static_cast<int>(std::floor(u + p.span / 2.0)) + 1);
  if (enforce_cp && ncip > cfg.ncp())
    fail(Err::CpViolation, "tap support " + std::to_string(ncip) + " samples exceeds ncp " +
                               std::to_string(cfg.ncp()));
  TapVector tv;
  tv.ncip = ncip;
  tv.taps.assign(ncip, cplx(0.0, 0.0));
  // theta_lqn = -2 pi fc tau_lqn (tx circuit phase applied by the caller)
  const cplx rot = std::polar(1.0, -2.0 * kPi * std::fmod(cfg.fc() * tau, 1.0));
  const int i_lo = std::max(0, static_cast<int>(std::ceil(u - p.span / 2.0)));
  for (int i = i_lo; i < ncip; ++i) {
    double pv = pulse_value(p, i * ts - tau, ts);
    if (pv != 0.0) tv.taps[i] = path.gain * pv * rot;
  }
  return tv;
}

ReceivedSymbol simulate_time_domain(const ValidatedConfig& cfg, const MultipathChannel& ch,
                                    const PulseShape& p, const cvec& v, const PilotGrid& x,
                                    NoiseSeed noise, bool enforce_cp) {
  const int m_tot = cfg.mtot();
  const int ncp = cfg.ncp();
  if (static_cast<int>(v.size()) != cfg.ntx())
    fail(Err::InvalidArgument, "beamformer length must equal ntx");
  if (static_cast<int>(x.x.size()) != m_tot)
    fail(Err::InvalidArgument, "pilot grid does not match mtot");
  if (ch.paths.empty()) fail(Err::EmptyChannel, "channel has no paths");

  const cvec x_time = idft(x.x);
  // CP-extended symbol; samples before it belong to a quiet guard period
  cvec ext(m_tot + ncp);
  for (int i = 0; i < ncp; ++i) ext[i] = x_time[m_tot - ncp + i];
  for (int i = 0; i < m_tot; ++i) ext[ncp + i] = x_time[i];

  cvec y_sym(m_tot, cplx(0.0, 0.0));
  for (const PathComponent& path : ch.paths) {
    for (int q = 1; q <= cfg.ntx(); ++q) {
      const cplx vq = v[q - 1];
      for (int n = 1; n <= cfg.nrx(); ++n) {
        const TapVector tv = discrete_channel_taps(path, q, n, cfg, p, enforce_cp);
        for (int j = 0; j < m_tot; ++j) {
          cplx acc = 0.0;
          const int i_max = std::min(tv.ncip - 1, ncp + j);
          for (int i = 0; i <= i_max; ++i) {
            if (tv.taps[i] == cplx(0.0, 0.0)) continue;
            acc += tv.taps[i] * ext[ncp + j - i];
          }
          y_sym[j] += vq * acc;
        }
      }
    }
  }
  const double rho = channel_rho(cfg, ch);
  for (cplx& s : y_sym) s *= rho;

  ReceivedSymbol out;
  out.noise_variance = noise ? cfg.noise_variance() : 0.0;
  if (noise) {
    // white time-domain noise on the combined stream; the unnormalized DFT
    // scales per-sample variance by mtot, so sigma_td^2 = n0*bw/(2*mtot^2)
    // reproduces the frequency-domain variance n0*bw/(2*mtot)
    std::mt19937_64 rng(*noise);
    const double sigma_td = std::sqrt(cfg.noise_variance() / (2.0 * m_tot));
    std::normal_distribution<double> gauss(0.0, sigma_td);
    for (cplx& s : y_sym) s += cplx(gauss(rng), gauss(rng));
  }
  out.y = dft(y_sym);
  return out;
}

double verify_freq_time_equivalence(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const PilotGrid& x,
                           bool enforce_cp) {
  // frequency-domain path assembled directly so that deliberate CP violations
  // can be compared instead of rejected.
  ReceivedSymbol fd;
  fd.y.assign(cfg.mtot(), cplx(0.0, 0.0));
  for (int m : x.active)
    fd.y[m] = cdot(ttd_combiner(cfg, m), apply_channel(cfg, ch, p, v, m)) * x.x[m];
  const ReceivedSymbol td = simulate_time_domain(cfg, ch, p, v, x, std::nullopt, enforce_cp);
  double worst = 0.0;
  for (int m : x.active) {
    double den = std::max(std::abs(fd.y[m]), 1e-30);
    worst = std::max(worst, std::abs(td.y[m] - fd.y[m]) / den);
  }
  return worst;
}

cvec circulant_time_domain(const ValidatedConfig& cfg, const MultipathChannel& ch,
                           const PulseShape& p, const cvec& v, const PilotGrid& x) {
  const int m_tot = cfg.mtot();
  // combined first row of the post-CP-removal cyclic matrix
  cvec row(m_tot, cplx(0.0, 0.0));
  for (const PathComponent& path : ch.paths)
    for (int n = 1; n <= cfg.nrx(); ++n)
      for (int q = 1; q <= cfg.ntx(); ++q) {
        const TapVector tv = discrete_channel_taps(path, q, n, cfg, p, true);
        if (tv.ncip > m_tot) fail(Err::CpViolation, "taps longer than the symbol");
        for (int i = 0; i < tv.ncip; ++i) row[i] += v[q - 1] * tv.taps[i];
      }
  const double rho = channel_rho(cfg, ch);
  const cvec x_time = idft(x.x);
  cvec y(m_tot, cplx(0.0, 0.0));
  for (int k = 0; k < m_tot; ++k) {
    cplx acc = 0.0;
    for (int i = 0; i < m_tot; ++i) acc += row[i] * x_time[(k - i + m_tot) % m_tot];
    y[k] = rho * acc;
  }
  return dft(y);
}

}  // namespace ttdbeam
