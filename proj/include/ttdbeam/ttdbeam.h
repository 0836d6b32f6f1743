/* ttdbeam — wideband mmWave TTD beam-training simulation library.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every function returns a ttdb status code (TTDB_OK on
 * success) and writes results through out-pointers. ttdb_last_error() gives a
 * human-readable detail string for the most recent failure on this thread.
 */
#ifndef TTDBEAM_H
#define TTDBEAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TTDB_BUILD)
#define TTDB_API __declspec(dllexport)
#else
#define TTDB_API __declspec(dllimport)
#endif
#else
#define TTDB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum ttdb_status {
  TTDB_OK = 0,
  TTDB_ERR_INVALID_ARGUMENT = 1,
  TTDB_ERR_INVALID_DELAY_SPACING = 2,
  TTDB_ERR_INVALID_PILOT_SET = 3,
  TTDB_ERR_ODD_SUBCARRIER_COUNT = 4,
  TTDB_ERR_EMPTY_PILOT_SET = 5,
  TTDB_ERR_EMPTY_BLOCK = 6,
  TTDB_ERR_NON_DIVISIBLE = 7,
  TTDB_ERR_INDEX_OUT_OF_RANGE = 8,
  TTDB_ERR_CP_VIOLATION = 9,
  TTDB_ERR_DELAY_TOO_SMALL = 10,
  TTDB_ERR_INVALID_SPEC = 11,
  TTDB_ERR_EMPTY_CHANNEL = 12,
  TTDB_ERR_PARSE = 13,
  TTDB_ERR_IO = 14,
  TTDB_ERR_UNKNOWN = 15
};

TTDB_API const char* ttdb_version(void);
TTDB_API const char* ttdb_strerror(int status);
/* Detail message of the last failing call on the current thread. */
TTDB_API const char* ttdb_last_error(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct ttdb_config ttdb_config;

typedef struct ttdb_config_params {
  double fc_hz;
  double bw_hz;
  int32_t mtot;
  int32_t ncp; /* -1: default mtot/8 */
  int32_t ntx;
  int32_t nrx;
  double delta_tau_s;
  double n0;
} ttdb_config_params;

/* pilots may be NULL with n_pilots 0: all subcarriers are pilots. */
TTDB_API int ttdb_config_create(const ttdb_config_params* p, const int32_t* pilots,
                                size_t n_pilots, ttdb_config** out);
TTDB_API int ttdb_config_load(const char* path, ttdb_config** out);
TTDB_API void ttdb_config_free(ttdb_config* cfg);
TTDB_API int ttdb_config_get(const ttdb_config* cfg, ttdb_config_params* out);
/* Writes min(capacity, count) pilot indices; *n_out gets the full count. */
TTDB_API int ttdb_config_pilots(const ttdb_config* cfg, int32_t* buf, size_t capacity,
                                size_t* n_out);
TTDB_API int ttdb_subcarrier_frequency(const ttdb_config* cfg, int32_t m, double* f_hz);

/* ---- channels ---------------------------------------------------------- */

typedef struct ttdb_channel ttdb_channel;

/* records: n_paths * 5 doubles (gain_re, gain_im, delay_s, aod_rad, aoa_rad) */
TTDB_API int ttdb_channel_create(const double* records, size_t n_paths, ttdb_channel** out);
TTDB_API int ttdb_channel_load(const char* path, ttdb_channel** out);
TTDB_API int ttdb_channel_save(const ttdb_channel* ch, const char* path);
TTDB_API void ttdb_channel_free(ttdb_channel* ch);
TTDB_API int ttdb_channel_num_paths(const ttdb_channel* ch, size_t* n_out);
TTDB_API int ttdb_channel_path(const ttdb_channel* ch, size_t index, double record[5]);

typedef struct ttdb_gen_params {
  uint64_t seed;
  int32_t num_paths;
  double delay_min_s;
  double delay_max_s;
  int32_t fixed_angles; /* 0: AoA/AoD uniform in [-pi/2, pi/2]; 1: use fields below */
  double aoa_rad;
  double aod_rad;
} ttdb_gen_params;

TTDB_API int ttdb_channel_generate(const ttdb_gen_params* p, ttdb_channel** out);

/* 1 iff the CP is longer than the worst cumulative delay plus the TTD span. */
TTDB_API int ttdb_check_cp(const ttdb_config* cfg, const ttdb_channel* ch, int* ok);

/* ---- array math -------------------------------------------------------- */

TTDB_API int ttdb_gain(const ttdb_config* cfg, double theta_rad, int32_t m, double* out);
TTDB_API int ttdb_beam_center(const ttdb_config* cfg, int32_t m, int exact, double* out);
TTDB_API int ttdb_epsilon_beamwidth(double epsilon, int32_t nrx, double* out);
TTDB_API int ttdb_min_max_gain(const ttdb_config* cfg, int32_t grid_size, double* out);
TTDB_API int ttdb_in_design_subset(double delta_tau_s, int32_t mtot, double epsilon,
                                   double fc_hz, double bw_hz, int32_t nrx, int relaxed,
                                   int* member);
TTDB_API int ttdb_required_subcarriers(double delta_tau_s, double fc_hz, double bw_hz,
                                       double epsilon, int32_t nrx, int relaxed,
                                       int32_t* out);

/* ---- training ---------------------------------------------------------- */

typedef struct ttdb_train_opts {
  double snr_db;     /* target post-transmitter-beam SNR; ignored if noiseless */
  int32_t noiseless; /* 1: no noise */
  uint64_t seed;
  int32_t align_path; /* tx beamformer aligned to this path's AoD */
} ttdb_train_opts;

typedef struct ttdb_train_result {
  int32_t m_best;
  double aoa_estimate_rad;
  int32_t symbols_used;
  double post_gain;    /* vs the aligned path's true AoA */
  double se_bps_hz;    /* with the trained combiner */
  double achieved_snr_db;
} ttdb_train_result;

/* One-shot TTD training over the config's pilot set (with resource blocks). */
TTDB_API int ttdb_train(const ttdb_config* cfg, const ttdb_channel* ch,
                        const ttdb_train_opts* opts, ttdb_train_result* out);

/* ---- experiments (CSV writers) ----------------------------------------- */

TTDB_API int ttdb_run_beampattern(const ttdb_config* cfg, int32_t grid_size,
                                  const char* csv_path);

typedef struct ttdb_design_scan_opts {
  double fc_hz;
  double bw_hz;
  int32_t nrx;
  double epsilon;
  const double* delta_taus_s;
  size_t n_delta_taus;
  int32_t m_min;
  int32_t m_max;
  int32_t grid_size;
} ttdb_design_scan_opts;

TTDB_API int ttdb_run_design_scan(const ttdb_design_scan_opts* opts, const char* csv_path);

typedef struct ttdb_sweep_opts {
  const double* snr_db;
  size_t n_snr;
  const int32_t* pilot_counts;
  size_t n_pilot_counts;
  int32_t trials;
  uint64_t seed;
} ttdb_sweep_opts;

TTDB_API int ttdb_run_los_sweep(const ttdb_config* cfg, const ttdb_sweep_opts* opts,
                                const char* csv_path);

typedef struct ttdb_benchmark_opts {
  const double* snr_db;
  size_t n_snr;
  const int32_t* paa_k;
  size_t n_paa_k;
  int32_t pilot_count;
  int32_t trials;
  uint64_t seed;
  int32_t num_paths;
  const char* channel_file; /* optional, may be NULL */
} ttdb_benchmark_opts;

TTDB_API int ttdb_run_benchmark(const ttdb_config* cfg, const ttdb_benchmark_opts* opts,
                                const char* csv_path);

/* Randomized frequency/time model equivalence trials; csv_path may be NULL. */
TTDB_API int ttdb_run_verify(int32_t trials, uint64_t seed, const char* csv_path,
                             double* max_rel_err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TTDBEAM_H */
