#include "ttdbeam/ttdbeam.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "ttdbeam/arraylab.hpp"
#include "ttdbeam/channel.hpp"
#include "ttdbeam/config.hpp"
#include "ttdbeam/harness.hpp"
#include "ttdbeam/oracle.hpp"
#include "ttdbeam/phy.hpp"
#include "ttdbeam/training.hpp"

using namespace ttdbeam;

struct ttdb_config {
  ValidatedConfig cfg;
};

struct ttdb_channel {
  MultipathChannel ch;
};

namespace {

thread_local std::string g_last_error;

int status_of(Err e) {
  switch (e) {
    case Err::Ok: return TTDB_OK;
    case Err::InvalidArgument: return TTDB_ERR_INVALID_ARGUMENT;
    case Err::InvalidDelaySpacing: return TTDB_ERR_INVALID_DELAY_SPACING;
    case Err::InvalidPilotSet: return TTDB_ERR_INVALID_PILOT_SET;
    case Err::OddSubcarrierCount: return TTDB_ERR_ODD_SUBCARRIER_COUNT;
    case Err::EmptyPilotSet: return TTDB_ERR_EMPTY_PILOT_SET;
    case Err::EmptyBlock: return TTDB_ERR_EMPTY_BLOCK;
    case Err::NonDivisible: return TTDB_ERR_NON_DIVISIBLE;
    case Err::IndexOutOfRange: return TTDB_ERR_INDEX_OUT_OF_RANGE;
    case Err::CpViolation: return TTDB_ERR_CP_VIOLATION;
    case Err::DelayTooSmall: return TTDB_ERR_DELAY_TOO_SMALL;
    case Err::InvalidSpec: return TTDB_ERR_INVALID_SPEC;
    case Err::EmptyChannel: return TTDB_ERR_EMPTY_CHANNEL;
    case Err::ParseError: return TTDB_ERR_PARSE;
    case Err::IoError: return TTDB_ERR_IO;
  }
  return TTDB_ERR_UNKNOWN;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return TTDB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TTDB_ERR_UNKNOWN;
  }
}

int require(bool ok, const char* what) {
  if (ok) return TTDB_OK;
  g_last_error = what;
  return TTDB_ERR_INVALID_ARGUMENT;
}

std::ofstream open_csv(const char* path) {
  std::ofstream out(path);
  if (!out) fail(Err::IoError, std::string("cannot write: ") + path);
  return out;
}

}  // namespace

extern "C" {

const char* ttdb_version(void) { return "0.1.0"; }

const char* ttdb_strerror(int status) {
  switch (status) {
    case TTDB_OK: return "ok";
    case TTDB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TTDB_ERR_INVALID_DELAY_SPACING: return "invalid delay spacing";
    case TTDB_ERR_INVALID_PILOT_SET: return "invalid pilot set";
    case TTDB_ERR_ODD_SUBCARRIER_COUNT: return "odd subcarrier count";
    case TTDB_ERR_EMPTY_PILOT_SET: return "empty pilot set";
    case TTDB_ERR_EMPTY_BLOCK: return "empty block";
    case TTDB_ERR_NON_DIVISIBLE: return "non-divisible";
    case TTDB_ERR_INDEX_OUT_OF_RANGE: return "index out of range";
    case TTDB_ERR_CP_VIOLATION: return "cyclic prefix violation";
    case TTDB_ERR_DELAY_TOO_SMALL: return "delay too small";
    case TTDB_ERR_INVALID_SPEC: return "invalid spec";
    case TTDB_ERR_EMPTY_CHANNEL: return "empty channel";
    case TTDB_ERR_PARSE: return "parse error";
    case TTDB_ERR_IO: return "io error";
    default: return "unknown error";
  }
}

const char* ttdb_last_error(void) { return g_last_error.c_str(); }

int ttdb_config_create(const ttdb_config_params* p, const int32_t* pilots, size_t n_pilots,
                       ttdb_config** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return guarded([&] {
    SystemConfig raw;
    raw.fc_hz = p->fc_hz;
    raw.bw_hz = p->bw_hz;
    raw.mtot = p->mtot;
    raw.ncp = p->ncp;
    raw.ntx = p->ntx;
    raw.nrx = p->nrx;
    raw.delta_tau_s = p->delta_tau_s;
    raw.n0 = p->n0;
    if (pilots && n_pilots > 0) raw.pilot_set.assign(pilots, pilots + n_pilots);
    *out = new ttdb_config{validate(raw)};
  });
}

int ttdb_config_load(const char* path, ttdb_config** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] { *out = new ttdb_config{validate(load_config_file(path))}; });
}

void ttdb_config_free(ttdb_config* cfg) { delete cfg; }

int ttdb_config_get(const ttdb_config* cfg, ttdb_config_params* out) {
  if (int rc = require(cfg && out, "null argument")) return rc;
  out->fc_hz = cfg->cfg.fc();
  out->bw_hz = cfg->cfg.bw();
  out->mtot = cfg->cfg.mtot();
  out->ncp = cfg->cfg.ncp();
  out->ntx = cfg->cfg.ntx();
  out->nrx = cfg->cfg.nrx();
  out->delta_tau_s = cfg->cfg.delta_tau();
  out->n0 = cfg->cfg.n0();
  return TTDB_OK;
}

int ttdb_config_pilots(const ttdb_config* cfg, int32_t* buf, size_t capacity, size_t* n_out) {
  if (int rc = require(cfg && n_out, "null argument")) return rc;
  const auto& pilots = cfg->cfg.pilots();
  *n_out = pilots.size();
  if (buf) {
    size_t n = std::min(capacity, pilots.size());
    for (size_t i = 0; i < n; ++i) buf[i] = pilots[i];
  }
  return TTDB_OK;
}

int ttdb_subcarrier_frequency(const ttdb_config* cfg, int32_t m, double* f_hz) {
  if (int rc = require(cfg && f_hz, "null argument")) return rc;
  return guarded([&] { *f_hz = cfg->cfg.subcarrier_frequency(m); });
}

int ttdb_channel_create(const double* records, size_t n_paths, ttdb_channel** out) {
  if (int rc = require(records && out && n_paths > 0, "need at least one path record")) return rc;
  return guarded([&] {
    MultipathChannel ch;
    for (size_t i = 0; i < n_paths; ++i) {
      const double* r = records + 5 * i;
      ch.paths.push_back(PathComponent{cplx(r[0], r[1]), r[2], r[3], r[4]});
    }
    *out = new ttdb_channel{std::move(ch)};
  });
}

int ttdb_channel_load(const char* path, ttdb_channel** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] { *out = new ttdb_channel{load_channel(path)}; });
}

int ttdb_channel_save(const ttdb_channel* ch, const char* path) {
  if (int rc = require(ch && path, "null argument")) return rc;
  return guarded([&] { save_channel(ch->ch, path); });
}

void ttdb_channel_free(ttdb_channel* ch) { delete ch; }

int ttdb_channel_num_paths(const ttdb_channel* ch, size_t* n_out) {
  if (int rc = require(ch && n_out, "null argument")) return rc;
  *n_out = ch->ch.paths.size();
  return TTDB_OK;
}

int ttdb_channel_path(const ttdb_channel* ch, size_t index, double record[5]) {
  if (int rc = require(ch && record, "null argument")) return rc;
  if (index >= ch->ch.paths.size()) {
    g_last_error = "path index out of range";
    return TTDB_ERR_INDEX_OUT_OF_RANGE;
  }
  const PathComponent& p = ch->ch.paths[index];
  record[0] = p.gain.real();
  record[1] = p.gain.imag();
  record[2] = p.delay_s;
  record[3] = p.aod_rad;
  record[4] = p.aoa_rad;
  return TTDB_OK;
}

int ttdb_channel_generate(const ttdb_gen_params* p, ttdb_channel** out) {
  if (int rc = require(p && out, "null argument")) return rc;
  return guarded([&] {
    GenSpec spec;
    spec.num_paths = p->num_paths;
    spec.delay_min_s = p->delay_min_s;
    spec.delay_max_s = p->delay_max_s;
    if (p->fixed_angles) {
      spec.angle_dist = AngleDist::Fixed;
      spec.fixed_aoa_rad = p->aoa_rad;
      spec.fixed_aod_rad = p->aod_rad;
    }
    *out = new ttdb_channel{generate_paths(p->seed, spec)};
  });
}

int ttdb_check_cp(const ttdb_config* cfg, const ttdb_channel* ch, int* ok) {
  if (int rc = require(cfg && ch && ok, "null argument")) return rc;
  *ok = check_cp_condition(cfg->cfg, ch->ch) ? 1 : 0;
  return TTDB_OK;
}

int ttdb_gain(const ttdb_config* cfg, double theta_rad, int32_t m, double* out) {
  if (int rc = require(cfg && out, "null argument")) return rc;
  return guarded([&] { *out = gain(cfg->cfg, theta_rad, m); });
}

int ttdb_beam_center(const ttdb_config* cfg, int32_t m, int exact, double* out) {
  if (int rc = require(cfg && out, "null argument")) return rc;
  return guarded([&] { *out = beam_center(cfg->cfg, m, exact != 0); });
}

int ttdb_epsilon_beamwidth(double epsilon, int32_t nrx, double* out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = epsilon_beamwidth(epsilon, nrx); });
}

int ttdb_min_max_gain(const ttdb_config* cfg, int32_t grid_size, double* out) {
  if (int rc = require(cfg && out, "null argument")) return rc;
  return guarded([&] { *out = min_max_gain(cfg->cfg, cfg->cfg.pilots(), grid_size); });
}

int ttdb_in_design_subset(double delta_tau_s, int32_t mtot, double epsilon, double fc_hz,
                          double bw_hz, int32_t nrx, int relaxed, int* member) {
  if (int rc = require(member != nullptr, "null argument")) return rc;
  return guarded([&] {
    DesignPoint dp{delta_tau_s, mtot, epsilon};
    DesignContext ctx{fc_hz, bw_hz, nrx};
    *member = in_design_subset(dp, ctx, relaxed != 0) ? 1 : 0;
  });
}

int ttdb_required_subcarriers(double delta_tau_s, double fc_hz, double bw_hz, double epsilon,
                              int32_t nrx, int relaxed, int32_t* out) {
  if (int rc = require(out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *out = required_subcarriers(delta_tau_s, fc_hz, bw_hz, epsilon, nrx, relaxed != 0);
  });
}

int ttdb_train(const ttdb_config* cfg, const ttdb_channel* ch, const ttdb_train_opts* opts,
               ttdb_train_result* out) {
  if (int rc = require(cfg && ch && opts && out, "null argument")) return rc;
  return guarded([&] {
    const PulseShape pulse;
    const ValidatedConfig& base = cfg->cfg;
    if (opts->align_path < 0 || opts->align_path >= ch->ch.num_paths())
      fail(Err::IndexOutOfRange, "align_path out of range");
    const cvec v = aligned_tx_beamformer(ch->ch, base, opts->align_path);
    ValidatedConfig cal = opts->noiseless
                              ? base
                              : calibrate_n0(base, ch->ch, pulse, v, opts->snr_db);
    const std::vector<int>& pilots = base.pilots();
    const std::vector<int> active = resource_block_expand(pilots, cal.mtot());
    const PilotGrid grid = make_pilots(cal, active);
    const NoiseSeed noise =
        opts->noiseless ? NoiseSeed(std::nullopt) : NoiseSeed(opts->seed);
    const ReceivedSymbol y = receive_symbol(cal, ch->ch, pulse, v, grid, noise);
    const TrainingResult r =
        estimate_aoa(rsrp(y, pilot_blocks(pilots, cal.mtot())), build_lut(cal, pilots));
    out->m_best = r.m_best;
    out->aoa_estimate_rad = r.aoa_estimate;
    out->symbols_used = r.symbols_used;
    const double aoa_true = ch->ch.paths[opts->align_path].aoa_rad;
    out->post_gain = post_training_gain(r.aoa_estimate, aoa_true, cal.nrx(), cal.fc());
    out->se_bps_hz = spectral_efficiency_trained(cal, ch->ch, pulse, v, r.aoa_estimate);
    out->achieved_snr_db = 10.0 * std::log10(snr(cal, ch->ch, pulse, v));
  });
}

int ttdb_run_beampattern(const ttdb_config* cfg, int32_t grid_size, const char* csv_path) {
  if (int rc = require(cfg && csv_path, "null argument")) return rc;
  return guarded([&] {
    auto out = open_csv(csv_path);
    run_beampattern(cfg->cfg, grid_size, out);
  });
}

int ttdb_run_design_scan(const ttdb_design_scan_opts* opts, const char* csv_path) {
  if (int rc = require(opts && csv_path && opts->delta_taus_s, "null argument")) return rc;
  return guarded([&] {
    DesignScanSpec spec;
    spec.fc_hz = opts->fc_hz;
    spec.bw_hz = opts->bw_hz;
    spec.nrx = opts->nrx;
    spec.epsilon = opts->epsilon;
    spec.delta_taus_s.assign(opts->delta_taus_s, opts->delta_taus_s + opts->n_delta_taus);
    spec.m_min = opts->m_min;
    spec.m_max = opts->m_max;
    spec.grid_size = opts->grid_size;
    auto out = open_csv(csv_path);
    run_design_scan(spec, out);
  });
}

int ttdb_run_los_sweep(const ttdb_config* cfg, const ttdb_sweep_opts* opts,
                       const char* csv_path) {
  if (int rc = require(cfg && opts && csv_path && opts->snr_db && opts->pilot_counts,
                       "null argument"))
    return rc;
  return guarded([&] {
    LosSweepSpec spec;
    spec.snr_db.assign(opts->snr_db, opts->snr_db + opts->n_snr);
    spec.pilot_counts.assign(opts->pilot_counts, opts->pilot_counts + opts->n_pilot_counts);
    spec.trials = opts->trials;
    spec.seed = opts->seed;
    auto out = open_csv(csv_path);
    run_los_sweep(cfg->cfg, spec, out);
  });
}

int ttdb_run_benchmark(const ttdb_config* cfg, const ttdb_benchmark_opts* opts,
                       const char* csv_path) {
  if (int rc = require(cfg && opts && csv_path && opts->snr_db && opts->paa_k, "null argument"))
    return rc;
  return guarded([&] {
    BenchmarkSpec spec;
    spec.snr_db.assign(opts->snr_db, opts->snr_db + opts->n_snr);
    spec.paa_k.assign(opts->paa_k, opts->paa_k + opts->n_paa_k);
    spec.pilot_count = opts->pilot_count;
    spec.trials = opts->trials;
    spec.seed = opts->seed;
    spec.num_paths = opts->num_paths;
    if (opts->channel_file) spec.channel_file = opts->channel_file;
    auto out = open_csv(csv_path);
    run_benchmark(cfg->cfg, spec, out);
  });
}

int ttdb_run_verify(int32_t trials, uint64_t seed, const char* csv_path, double* max_rel_err) {
  if (int rc = require(max_rel_err != nullptr, "null argument")) return rc;
  return guarded([&] {
    VerifySpec spec;
    spec.trials = trials;
    spec.seed = seed;
    if (csv_path) {
      auto out = open_csv(csv_path);
      *max_rel_err = run_verify(spec, &out).max_rel_err;
    } else {
      *max_rel_err = run_verify(spec, nullptr).max_rel_err;
    }
  });
}

}  // extern "C"
