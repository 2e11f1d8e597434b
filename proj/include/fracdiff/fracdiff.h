#ifndef FRACDIFF_FRACDIFF_H
#define FRACDIFF_FRACDIFF_H

/*
 * C interface to the fracdiff library: particle schemes for the 1D
 * space-fractional diffusion equation du/dt = D^alpha u with alpha = beta + 1.
 *
 * Every function returns a fracdiff_status. On failure the message of the most
 * recent error on the calling thread is available from fracdiff_last_error(),
 * and for FRACDIFF_ERR_CONFIG the offending key from fracdiff_last_error_key().
 * Output arguments are written only on success.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(FRACDIFF_BUILDING_LIBRARY)
#define FRACDIFF_API __attribute__((visibility("default")))
#else
#define FRACDIFF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracdiff_status {
  FRACDIFF_OK = 0,
  FRACDIFF_ERR_DOMAIN = 1,
  FRACDIFF_ERR_CONFIG = 2,
  FRACDIFF_ERR_ACCURACY = 3,
  FRACDIFF_ERR_INSTABILITY = 4,
  FRACDIFF_ERR_UNSUPPORTED = 5,
  FRACDIFF_ERR_DEGENERATE = 6,
  FRACDIFF_ERR_IO = 7,
  FRACDIFF_ERR_NULL_ARGUMENT = 8,
  FRACDIFF_ERR_INTERNAL = 9
} fracdiff_status;

typedef enum fracdiff_scheme {
  FRACDIFF_SCHEME_DD = 0,
  FRACDIFF_SCHEME_FPSE = 1,
  FRACDIFF_SCHEME_KPSE = 2,
  FRACDIFF_SCHEME_RLPSE = 3, /* experimental: inaccurate near the domain edges */
  FRACDIFF_SCHEME_GPSE = 4
} fracdiff_scheme;

typedef enum fracdiff_rk_order { FRACDIFF_RK1 = 1, FRACDIFF_RK2 = 2 } fracdiff_rk_order;

typedef enum fracdiff_kernel {
  FRACDIFF_KERNEL_ETA = 0,
  FRACDIFF_KERNEL_ETA1 = 1,
  FRACDIFF_KERNEL_PHI = 2,
  FRACDIFF_KERNEL_GD = 3,
  FRACDIFF_KERNEL_KAPPA = 4,
  FRACDIFF_KERNEL_F = 5,
  FRACDIFF_KERNEL_K = 6,
  FRACDIFF_KERNEL_E = 7
} fracdiff_kernel;

typedef struct fracdiff_field fracdiff_field;
typedef struct fracdiff_config fracdiff_config;

typedef struct fracdiff_stability_report {
  double lambda_min;
  double a_constant;
  size_t iterations;
  double residual;
  double last_change;
} fracdiff_stability_report;

FRACDIFF_API const char* fracdiff_version(void);
FRACDIFF_API const char* fracdiff_last_error(void);
FRACDIFF_API const char* fracdiff_last_error_key(void);
/* Step index carried by the most recent FRACDIFF_ERR_INSTABILITY on this thread. */
FRACDIFF_API size_t fracdiff_last_error_step(void);
/* Best available estimate carried by the most recent FRACDIFF_ERR_ACCURACY. */
FRACDIFF_API double fracdiff_last_error_partial(void);
FRACDIFF_API const char* fracdiff_status_name(fracdiff_status status);

/* n <= 0 restores the OpenMP default. */
FRACDIFF_API fracdiff_status fracdiff_set_threads(int n);

/* ---- special functions and exact solution ---------------------------- */

FRACDIFF_API fracdiff_status fracdiff_pcf_d(double nu, double z, double* out);
FRACDIFF_API fracdiff_status fracdiff_pcf_u(double a, double z, double* out);
FRACDIFF_API fracdiff_status fracdiff_pcf_v(double a, double z, double* out);

FRACDIFF_API fracdiff_status fracdiff_reduced_green(double alpha, double x, double* out);
FRACDIFF_API fracdiff_status fracdiff_green_function(double alpha, double x, double t, double* out);
/* R_alpha; split_point <= 0 selects the default split. */
FRACDIFF_API fracdiff_status fracdiff_characteristic_width(double alpha, double split_point, double* out);

FRACDIFF_API fracdiff_status fracdiff_c_beta(double beta, double* out);
FRACDIFF_API fracdiff_status fracdiff_kernel_eval(fracdiff_kernel kind, double beta, double epsilon, double r,
                                                  double* out);

/* ---- particle fields -------------------------------------------------- */

/* N equally spaced particles on [-D, D], eps = overlap * h, strengths set to the
 * fundamental solution at time t_init (zero when t_init <= 0). */
FRACDIFF_API fracdiff_status fracdiff_field_create_uniform(double beta, double half_width, size_t n, double overlap,
                                                           double t_init, fracdiff_field** out);
/* Half width from D = C t_width^{1/alpha} R_alpha. */
FRACDIFF_API fracdiff_status fracdiff_half_width_rule(double beta, double c, double t_width, double* out);
FRACDIFF_API fracdiff_status fracdiff_field_create(double beta, const double* positions, const double* volumes,
                                                   const double* strengths, size_t n, double epsilon,
                                                   fracdiff_field** out);
FRACDIFF_API fracdiff_status fracdiff_field_clone(const fracdiff_field* field, fracdiff_field** out);
FRACDIFF_API void fracdiff_field_free(fracdiff_field* field);

FRACDIFF_API fracdiff_status fracdiff_field_size(const fracdiff_field* field, size_t* out);
FRACDIFF_API fracdiff_status fracdiff_field_epsilon(const fracdiff_field* field, double* out);
/* Copy n values into `out`; n must equal the field size. */
FRACDIFF_API fracdiff_status fracdiff_field_positions(const fracdiff_field* field, double* out, size_t n);
FRACDIFF_API fracdiff_status fracdiff_field_volumes(const fracdiff_field* field, double* out, size_t n);
FRACDIFF_API fracdiff_status fracdiff_field_strengths(const fracdiff_field* field, double* out, size_t n);
FRACDIFF_API fracdiff_status fracdiff_field_set_strengths(fracdiff_field* field, const double* values, size_t n);
FRACDIFF_API fracdiff_status fracdiff_field_total_strength(const fracdiff_field* field, double* out);

FRACDIFF_API fracdiff_status fracdiff_eval_u(const fracdiff_field* field, double x, double* out);
FRACDIFF_API fracdiff_status fracdiff_eval_utilde(const fracdiff_field* field, double x, double* out);
FRACDIFF_API fracdiff_status fracdiff_eval_flux(const fracdiff_field* field, double x, double* out);

/* ---- schemes and time integration ------------------------------------ */

/* du/dt for a rate scheme; `rates` holds n = field size values. */
FRACDIFF_API fracdiff_status fracdiff_rhs(const fracdiff_field* field, fracdiff_scheme scheme, double* rates, size_t n);
/* One GPSE step of size dt, in place. */
FRACDIFF_API fracdiff_status fracdiff_step_gpse(fracdiff_field* field, double dt);
/* Advances the strengths in place from t0 to tf. On divergence the field is left
 * unchanged and fracdiff_last_error_step() reports the failing step. */
FRACDIFF_API fracdiff_status fracdiff_integrate(fracdiff_field* field, fracdiff_scheme scheme, fracdiff_rk_order order,
                                                double dt, double t0, double tf);

FRACDIFF_API fracdiff_status fracdiff_power_iteration(const fracdiff_field* field, fracdiff_scheme scheme, double tol,
                                                      size_t max_iter, uint64_t seed, fracdiff_stability_report* out);

/* ---- analysis --------------------------------------------------------- */

FRACDIFF_API fracdiff_status fracdiff_rel_l1_error(const fracdiff_field* field, double t, double d_eps, double* out);
FRACDIFF_API fracdiff_status fracdiff_conservation_drift(const double* totals, size_t n, double* out);

/* ---- experiments ------------------------------------------------------ */

/* A configuration holding the reference defaults. */
FRACDIFF_API fracdiff_status fracdiff_config_create(fracdiff_config** out);
FRACDIFF_API void fracdiff_config_free(fracdiff_config* config);
FRACDIFF_API fracdiff_status fracdiff_config_apply_preset(fracdiff_config* config, const char* name);
/* key=value tokens separated by whitespace or newlines; '#' comments. */
FRACDIFF_API fracdiff_status fracdiff_config_load(fracdiff_config* config, const char* text);
FRACDIFF_API fracdiff_status fracdiff_config_set(fracdiff_config* config, const char* key, const char* value);
FRACDIFF_API fracdiff_status fracdiff_config_validate(const fracdiff_config* config);
/* Half width D the configuration resolves to. */
FRACDIFF_API fracdiff_status fracdiff_config_half_width(const fracdiff_config* config, double* out);
/* Smoothing length of the particle field (GPSE: dt^{1/alpha}). */
FRACDIFF_API fracdiff_status fracdiff_config_epsilon(const fracdiff_config* config, double* out);
/* Runs the configured study; out_dir == NULL uses the configured out_dir. */
FRACDIFF_API fracdiff_status fracdiff_run(const fracdiff_config* config, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
