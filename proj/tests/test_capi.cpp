// Exercises the shared-library C surface end to end: handles, error codes,
// file I/O, and one CSV experiment. Plain main, nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "ttdbeam/ttdbeam.h"

static int g_failures = 0;

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++g_failures;                                              \
    }                                                            \
  } while (0)

int main() {
  CHECK(std::strcmp(ttdb_version(), "0.1.0") == 0);
  CHECK(std::strcmp(ttdb_strerror(TTDB_OK), "ok") == 0);
  CHECK(ttdb_strerror(TTDB_ERR_CP_VIOLATION) != nullptr);

  ttdb_config_params p{};
  p.fc_hz = 28e9;
  p.bw_hz = 400e6;
  p.mtot = 8;
  p.ncp = 4;
  p.ntx = 1;
  p.nrx = 8;
  p.delta_tau_s = 2.5e-9;
  p.n0 = 1.0;

  ttdb_config* cfg = nullptr;
  CHECK(ttdb_config_create(&p, nullptr, 0, &cfg) == TTDB_OK);

  // validation failures surface as status codes with detail text
  ttdb_config* bad = nullptr;
  ttdb_config_params odd = p;
  odd.mtot = 7;
  CHECK(ttdb_config_create(&odd, nullptr, 0, &bad) == TTDB_ERR_ODD_SUBCARRIER_COUNT);
  CHECK(bad == nullptr);
  CHECK(std::strlen(ttdb_last_error()) > 0);

  ttdb_config_params zero_dtau = p;
  zero_dtau.delta_tau_s = 0.0;
  CHECK(ttdb_config_create(&zero_dtau, nullptr, 0, &bad) == TTDB_ERR_INVALID_DELAY_SPACING);

  int32_t oob[2] = {0, 8};
  CHECK(ttdb_config_create(&p, oob, 2, &bad) == TTDB_ERR_INVALID_PILOT_SET);

  ttdb_config_params got{};
  CHECK(ttdb_config_get(cfg, &got) == TTDB_OK);
  CHECK(got.mtot == 8);
  CHECK(got.nrx == 8);

  size_t n_pilots = 0;
  int32_t buf[8];
  CHECK(ttdb_config_pilots(cfg, buf, 8, &n_pilots) == TTDB_OK);
  CHECK(n_pilots == 8);
  CHECK(buf[7] == 7);

  double f = 0.0;
  CHECK(ttdb_subcarrier_frequency(cfg, 0, &f) == TTDB_OK);
  CHECK(f == 28e9);
  CHECK(ttdb_subcarrier_frequency(cfg, 4, &f) == TTDB_OK);
  CHECK(f == 27.8e9);
  CHECK(ttdb_subcarrier_frequency(cfg, 8, &f) == TTDB_ERR_INDEX_OUT_OF_RANGE);

  double g = 0.0;
  CHECK(ttdb_gain(cfg, 0.0, 0, &g) == TTDB_OK);
  CHECK(std::fabs(g - 8.0) < 1e-9);

  double omega = 0.0;
  CHECK(ttdb_epsilon_beamwidth(0.6, 8, &omega) == TTDB_OK);
  CHECK(std::fabs(omega - 0.1266) < 1e-3);

  int member = 0;
  CHECK(ttdb_in_design_subset(2.5e-9, 8, 0.6, 28e9, 400e6, 8, 1, &member) == TTDB_OK);
  CHECK(member == 1);
  CHECK(ttdb_in_design_subset(2.5e-9, 8, 0.6, 28e9, 400e6, 8, 0, &member) == TTDB_OK);
  CHECK(member == 0);

  int32_t req = 0;
  CHECK(ttdb_required_subcarriers(2.5e-9, 28e9, 400e6, 0.6, 8, 1, &req) == TTDB_OK);
  CHECK(req == 8);
  CHECK(ttdb_required_subcarriers(2.4e-9, 28e9, 400e6, 0.6, 8, 1, &req) ==
        TTDB_ERR_DELAY_TOO_SMALL);

  // channel round trip through the C surface
  double rec[10] = {1.0, 0.0, 0.0, 0.0, 0.35, 0.5, -0.5, 40e-9, 0.2, -0.6};
  ttdb_channel* ch = nullptr;
  CHECK(ttdb_channel_create(rec, 2, &ch) == TTDB_OK);
  size_t n_paths = 0;
  CHECK(ttdb_channel_num_paths(ch, &n_paths) == TTDB_OK);
  CHECK(n_paths == 2);
  double back[5];
  CHECK(ttdb_channel_path(ch, 1, back) == TTDB_OK);
  CHECK(back[2] == 40e-9);
  CHECK(ttdb_channel_path(ch, 2, back) == TTDB_ERR_INDEX_OUT_OF_RANGE);

  const char* ch_path = "capi_channel.csv";
  CHECK(ttdb_channel_save(ch, ch_path) == TTDB_OK);
  ttdb_channel* loaded = nullptr;
  CHECK(ttdb_channel_load(ch_path, &loaded) == TTDB_OK);
  CHECK(ttdb_channel_path(loaded, 0, back) == TTDB_OK);
  CHECK(back[4] == 0.35);
  ttdb_channel_free(loaded);
  CHECK(ttdb_channel_load("no_such_file.csv", &loaded) == TTDB_ERR_IO);

  int ok = 0;
  CHECK(ttdb_check_cp(cfg, ch, &ok) == TTDB_OK);
  CHECK(ok == 0);  // 40 ns exceeds the 8-subcarrier CP budget (10 ns)

  // noiseless one-shot training through the C API on a larger system
  ttdb_config_params big = p;
  big.mtot = 256;
  big.ncp = 32;
  big.ntx = 4;
  big.nrx = 8;
  ttdb_config* cfg_big = nullptr;
  int32_t pilots[8] = {0, 32, 64, 96, 128, 160, 192, 224};
  CHECK(ttdb_config_create(&big, pilots, 8, &cfg_big) == TTDB_OK);

  double los[5] = {1.0, 0.0, 0.0, 0.1, 0.0};  // broadside arrival
  ttdb_channel* ch_los = nullptr;
  CHECK(ttdb_channel_create(los, 1, &ch_los) == TTDB_OK);
  ttdb_train_opts topts{};
  topts.noiseless = 1;
  topts.align_path = 0;
  ttdb_train_result res{};
  CHECK(ttdb_train(cfg_big, ch_los, &topts, &res) == TTDB_OK);
  CHECK(res.symbols_used == 1);
  CHECK(res.m_best == 0);  // beam center 0 rad lives at subcarrier 0
  CHECK(res.post_gain > 0.999);

  // generated channels are deterministic
  ttdb_gen_params gen{};
  gen.seed = 5;
  gen.num_paths = 3;
  gen.delay_min_s = 1e-9;
  gen.delay_max_s = 20e-9;
  ttdb_channel *c1 = nullptr, *c2 = nullptr;
  CHECK(ttdb_channel_generate(&gen, &c1) == TTDB_OK);
  CHECK(ttdb_channel_generate(&gen, &c2) == TTDB_OK);
  double r1[5], r2[5];
  CHECK(ttdb_channel_path(c1, 2, r1) == TTDB_OK);
  CHECK(ttdb_channel_path(c2, 2, r2) == TTDB_OK);
  CHECK(std::memcmp(r1, r2, sizeof r1) == 0);
  ttdb_channel_free(c1);
  ttdb_channel_free(c2);

  // a small experiment lands on disk with its header
  const char* csv = "capi_beampattern.csv";
  CHECK(ttdb_run_beampattern(cfg, 16, csv) == TTDB_OK);
  FILE* fcsv = std::fopen(csv, "r");
  CHECK(fcsv != nullptr);
  if (fcsv) {
    char line[128] = {0};
    CHECK(std::fgets(line, sizeof line, fcsv) != nullptr);
    CHECK(std::strncmp(line, "theta_rad,m,f_m_hz,gain", 23) == 0);
    std::fclose(fcsv);
  }

  double max_err = 1.0;
  CHECK(ttdb_run_verify(9, 11, nullptr, &max_err) == TTDB_OK);
  CHECK(max_err < 1e-9);

  ttdb_channel_free(ch_los);
  ttdb_config_free(cfg_big);
  ttdb_channel_free(ch);
  ttdb_config_free(cfg);

  if (g_failures == 0) {
    std::printf("capi_tests: all checks passed\n");
    return 0;
  }
  std::fprintf(stderr, "capi_tests: %d failures\n", g_failures);
  return 1;
}
