#ifndef LEVSTAB_LEVSTAB_H
#define LEVSTAB_LEVSTAB_H

/*
 * C interface to the levstab library.
 *
 * Every function returns a levstab_status. On failure the message is
 * available from levstab_last_error() on the calling thread until the next
 * call on that thread. Strings returned through char** are owned by the
 * caller and released with levstab_string_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LEVSTAB_API __declspec(dllexport)
#else
#define LEVSTAB_API __attribute__((visibility("default")))
#endif

/* Values match the command-line exit codes. */
typedef enum levstab_status {
    LEVSTAB_OK = 0,
    LEVSTAB_VALIDATION_FAILED = 1, /* a cross-validation criterion failed */
    LEVSTAB_BAD_INPUT = 2,         /* invalid config, argument or parameter */
    LEVSTAB_RUNTIME_ERROR = 3      /* numerical failure, I/O error, failed map cells */
} levstab_status;

typedef enum levstab_class {
    LEVSTAB_STABLE = 0,
    LEVSTAB_DIVERGENCE = 1,
    LEVSTAB_PARAMETRIC_OSCILLATORY = 2,
    LEVSTAB_MARGINAL = 3,
    LEVSTAB_CELL_ERROR = 4
} levstab_class;

typedef struct levstab_config levstab_config;
typedef struct levstab_map levstab_map;
typedef struct levstab_trajectory levstab_trajectory;

LEVSTAB_API const char* levstab_version(void);
LEVSTAB_API const char* levstab_last_error(void);
LEVSTAB_API void levstab_string_free(char* s);

/* Configuration */
LEVSTAB_API levstab_status levstab_config_load(const char* path, levstab_config** out);
LEVSTAB_API levstab_status levstab_config_parse(const char* json_text, levstab_config** out);
/* The reference vehicle: m = 7650, C = 0.05, R = 9.71, z0 = 0.015, L = 3,
 * A = 0.005, Omega = 80, theta = 0. */
LEVSTAB_API levstab_status levstab_config_baseline(levstab_config** out);
LEVSTAB_API levstab_status levstab_config_to_json(const levstab_config* cfg, char** json_text);
LEVSTAB_API void levstab_config_free(levstab_config* cfg);

LEVSTAB_API levstab_status levstab_config_set_theta(levstab_config* cfg, double theta);
LEVSTAB_API levstab_status levstab_config_set_gains(levstab_config* cfg, double kp, double kd);
LEVSTAB_API levstab_status levstab_config_set_grid(levstab_config* cfg, double kp_lo, double kp_hi,
                                                   double kd_lo, double kd_hi, int nx, int ny);
/* LEVSTAB_BAD_INPUT when the config has no grid */
LEVSTAB_API levstab_status levstab_config_get_grid(const levstab_config* cfg, double* kp_lo,
                                                   double* kp_hi, double* kd_lo, double* kd_hi,
                                                   int* nx, int* ny);
LEVSTAB_API levstab_status levstab_config_set_kd_range(levstab_config* cfg, double lo, double hi);
LEVSTAB_API levstab_status levstab_config_set_periods(levstab_config* cfg, double periods);
/* "standard" or "hybrid" */
LEVSTAB_API levstab_status levstab_config_set_mode(levstab_config* cfg, const char* mode);
/* 0 selects LEVSTAB_THREADS or the hardware concurrency */
LEVSTAB_API levstab_status levstab_config_set_threads(levstab_config* cfg, int threads);

/* Closed forms */
LEVSTAB_API levstab_status levstab_natural_frequencies(const levstab_config* cfg, double kd,
                                                       double* omega1, double* omega2);
/* out = {h1, h2, k1, k2}; kind is one of 'a', 'b', 'c', 'd'. */
LEVSTAB_API levstab_status levstab_ellipse(const levstab_config* cfg, char kind, double out[4]);

/* Floquet multipliers at the given gains, sorted by decreasing modulus. */
LEVSTAB_API levstab_status levstab_multipliers(const levstab_config* cfg, double kp, double kd,
                                               double re[6], double im[6], levstab_class* cls);

/* Stability map over the configured grid */
LEVSTAB_API levstab_status levstab_map_compute(const levstab_config* cfg, levstab_map** out);
LEVSTAB_API levstab_status levstab_map_size(const levstab_map* map, size_t* nx, size_t* ny);
LEVSTAB_API levstab_status levstab_map_cell(const levstab_map* map, size_t ix, size_t iy,
                                            double* kp, double* kd, levstab_class* cls,
                                            double* max_mu_abs);
LEVSTAB_API size_t levstab_map_error_count(const levstab_map* map);
LEVSTAB_API void levstab_map_free(levstab_map* map);

/* Nonlinear simulation from the steady state plus the configured perturbation.
 * A gap closure still yields a trajectory; check levstab_trajectory_completed. */
LEVSTAB_API levstab_status levstab_simulate(const levstab_config* cfg, levstab_trajectory** out);
LEVSTAB_API size_t levstab_trajectory_length(const levstab_trajectory* traj);
/* state = {z, zdot, phi, phidot, I1, I2} */
LEVSTAB_API levstab_status levstab_trajectory_sample(const levstab_trajectory* traj, size_t i,
                                                     double* t, double state[6]);
LEVSTAB_API int levstab_trajectory_completed(const levstab_trajectory* traj);
LEVSTAB_API const char* levstab_trajectory_message(const levstab_trajectory* traj);
LEVSTAB_API void levstab_trajectory_free(levstab_trajectory* traj);

/* Runs a command ("ellipses", "map", "validate", "simulate", "resonance-chart",
 * "steady-state", "spectrum"), writing files into out_dir. format is "csv" or
 * "json". The JSON summary is returned through summary_json when non-NULL,
 * also when the status is nonzero but the command produced output. */
LEVSTAB_API levstab_status levstab_run_command(const levstab_config* cfg, const char* command,
                                               const char* out_dir, const char* format, int overlay,
                                               char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* LEVSTAB_LEVSTAB_H */
