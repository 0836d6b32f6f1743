// ttd-beamtrain: CLI front end over the ttdbeam C API.
//
// Subcommands: beampattern, design, train, sweep, benchmark, verify.
// Exit code 0 on success, nonzero with a diagnostic on stderr.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ttdbeam/ttdbeam.h"

namespace {

int die(int rc, const char* what) {
  std::fprintf(stderr, "ttd-beamtrain: %s: %s (%s)\n", what, ttdb_strerror(rc),
               ttdb_last_error());
  return 1;
}

struct ConfigHandle {
  ttdb_config* cfg = nullptr;
  ~ConfigHandle() { ttdb_config_free(cfg); }
};

struct ChannelHandle {
  ttdb_channel* ch = nullptr;
  ~ChannelHandle() { ttdb_channel_free(ch); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TTD array beam-training simulator"};
  app.require_subcommand(1);

  std::string config_path, channel_path, out_path;
  uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "system config JSON");
    if (needs_config) opt->required();
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_path, "output CSV path");
  };

  // beampattern
  auto* bp = app.add_subcommand("beampattern", "per-pilot gain pattern CSV");
  int bp_grid = 4096;
  add_common(bp, true);
  bp->add_option("--grid", bp_grid, "theta grid size");

  // design
  auto* ds = app.add_subcommand("design", "S_s membership and required subcarriers");
  double ds_eps = 0.6;
  bool ds_scan = false;
  add_common(ds, true);
  ds->add_option("--epsilon", ds_eps, "gain-floor parameter (floor = (1-eps)*nrx)");
  ds->add_flag("--scan", ds_scan, "emit a (delta_tau, M) design-scan CSV (needs --out)");

  // train
  auto* tr = app.add_subcommand("train", "one-shot training trial");
  double tr_snr = 20.0;
  bool tr_noiseless = false;
  add_common(tr, true);
  tr->add_option("--channel-file", channel_path, "channel CSV (default: broadside LoS)");
  tr->add_option("--snr-db", tr_snr, "target SNR in dB");
  tr->add_flag("--noiseless", tr_noiseless, "disable noise");

  // sweep
  auto* sw = app.add_subcommand("sweep", "LoS Monte Carlo sweep");
  std::vector<double> sw_snr{-10, 0, 10, 20, 30};
  std::vector<int32_t> sw_pilots{8, 16, 32, 64};
  int32_t sw_trials = 500;
  add_common(sw, true);
  sw->add_option("--snr-db", sw_snr, "SNR grid in dB")->delimiter(',');
  sw->add_option("--pilots", sw_pilots, "pilot counts")->delimiter(',');
  sw->add_option("--trials", sw_trials, "trials per point");

  // benchmark
  auto* bm = app.add_subcommand("benchmark", "TTD one-shot vs PAA DFT sweep");
  std::vector<double> bm_snr{0, 20};
  std::vector<int32_t> bm_k{4, 32};
  int32_t bm_trials = 200, bm_pilots = 32, bm_paths = 1;
  add_common(bm, true);
  bm->add_option("--snr-db", bm_snr, "SNR grid in dB")->delimiter(',');
  bm->add_option("--paa-k", bm_k, "PAA sweep lengths")->delimiter(',');
  bm->add_option("--trials", bm_trials, "trials per point");
  bm->add_option("--pilot-count", bm_pilots, "TTD resource blocks");
  bm->add_option("--paths", bm_paths, "synthetic channel path count");
  bm->add_option("--channel-file", channel_path, "fixed channel CSV");

  // verify
  auto* vf = app.add_subcommand("verify", "time-domain vs frequency-domain model check");
  int32_t vf_trials = 100;
  add_common(vf, false);
  vf->add_option("--trials", vf_trials, "randomized trials");

  CLI11_PARSE(app, argc, argv);

  ConfigHandle cfg;
  if (!config_path.empty()) {
    if (int rc = ttdb_config_load(config_path.c_str(), &cfg.cfg)) return die(rc, "config");
  }

  if (bp->parsed()) {
    if (out_path.empty()) out_path = "beampattern.csv";
    if (int rc = ttdb_run_beampattern(cfg.cfg, bp_grid, out_path.c_str()))
      return die(rc, "beampattern");
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (ds->parsed()) {
    ttdb_config_params p{};
    ttdb_config_get(cfg.cfg, &p);
    for (int relaxed = 0; relaxed <= 1; ++relaxed) {
      int member = 0;
      if (int rc = ttdb_in_design_subset(p.delta_tau_s, p.mtot, ds_eps, p.fc_hz, p.bw_hz,
                                         p.nrx, relaxed, &member))
        return die(rc, "design");
      int32_t req = -1;
      int rc = ttdb_required_subcarriers(p.delta_tau_s, p.fc_hz, p.bw_hz, ds_eps, p.nrx,
                                         relaxed, &req);
      std::printf("%s: in_S_s=%d required_subcarriers=%s\n", relaxed ? "relaxed" : "strict",
                  member, rc == TTDB_OK ? std::to_string(req).c_str() : "n/a (delay too small)");
    }
    double mmg = 0.0;
    if (int rc = ttdb_min_max_gain(cfg.cfg, 4096, &mmg)) return die(rc, "design");
    std::printf("min_max_gain(4096-point grid) = %.6f  floor=(1-eps)*nrx = %.6f\n", mmg,
                (1.0 - ds_eps) * p.nrx);
    if (ds_scan) {
      if (out_path.empty()) out_path = "design_scan.csv";
      std::vector<double> dtaus;
      for (int k = 0; k <= 12; ++k)
        dtaus.push_back((1.0 + 0.25 * k) / p.bw_hz);
      ttdb_design_scan_opts opts{};
      opts.fc_hz = p.fc_hz;
      opts.bw_hz = p.bw_hz;
      opts.nrx = p.nrx;
      opts.epsilon = ds_eps;
      opts.delta_taus_s = dtaus.data();
      opts.n_delta_taus = dtaus.size();
      opts.m_min = 4;
      opts.m_max = 64;
      opts.grid_size = 4096;
      if (int rc = ttdb_run_design_scan(&opts, out_path.c_str())) return die(rc, "design scan");
      std::printf("wrote %s\n", out_path.c_str());
    }
    return 0;
  }

  if (tr->parsed()) {
    ChannelHandle ch;
    if (!channel_path.empty()) {
      if (int rc = ttdb_channel_load(channel_path.c_str(), &ch.ch)) return die(rc, "channel");
    } else {
      double rec[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
      if (int rc = ttdb_channel_create(rec, 1, &ch.ch)) return die(rc, "channel");
    }
    ttdb_train_opts opts{};
    opts.snr_db = tr_snr;
    opts.noiseless = tr_noiseless ? 1 : 0;
    opts.seed = seed;
    opts.align_path = 0;
    ttdb_train_result r{};
    if (int rc = ttdb_train(cfg.cfg, ch.ch, &opts, &r)) return die(rc, "train");
    std::printf("m_best=%d aoa_estimate_rad=%.9f symbols_used=%d post_gain=%.6f "
                "se_bps_hz=%.6f achieved_snr_db=%.4f\n",
                r.m_best, r.aoa_estimate_rad, r.symbols_used, r.post_gain, r.se_bps_hz,
                r.achieved_snr_db);
    return 0;
  }

  if (sw->parsed()) {
    if (out_path.empty()) out_path = "los_sweep.csv";
    ttdb_sweep_opts opts{};
    opts.snr_db = sw_snr.data();
    opts.n_snr = sw_snr.size();
    opts.pilot_counts = sw_pilots.data();
    opts.n_pilot_counts = sw_pilots.size();
    opts.trials = sw_trials;
    opts.seed = seed;
    if (int rc = ttdb_run_los_sweep(cfg.cfg, &opts, out_path.c_str())) return die(rc, "sweep");
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (bm->parsed()) {
    if (out_path.empty()) out_path = "benchmark.csv";
    ttdb_benchmark_opts opts{};
    opts.snr_db = bm_snr.data();
    opts.n_snr = bm_snr.size();
    opts.paa_k = bm_k.data();
    opts.n_paa_k = bm_k.size();
    opts.pilot_count = bm_pilots;
    opts.trials = bm_trials;
    opts.seed = seed;
    opts.num_paths = bm_paths;
    opts.channel_file = channel_path.empty() ? nullptr : channel_path.c_str();
    if (int rc = ttdb_run_benchmark(cfg.cfg, &opts, out_path.c_str()))
      return die(rc, "benchmark");
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  if (vf->parsed()) {
    double max_err = 0.0;
    const char* csv = out_path.empty() ? nullptr : out_path.c_str();
    if (int rc = ttdb_run_verify(vf_trials, seed, csv, &max_err)) return die(rc, "verify");
    std::printf("frequency/time equivalence max relative error over %d trials: %.3e\n",
                vf_trials, max_err);
    if (csv) std::printf("wrote %s\n", out_path.c_str());
    return 0;
  }

  return 1;
}
