/* thermowalk C interface.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_free function. Functions return a tw_status; on failure the
 * message of the most recent error on the calling thread is available from
 * tw_last_error(). Output handles are written only on success.
 */
#ifndef THERMOWALK_H
#define THERMOWALK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(TW_BUILDING_LIBRARY)
#define TW_API __attribute__((visibility("default")))
#else
#define TW_API
#endif

typedef enum tw_status {
    TW_OK = 0,
    TW_ERR_CONFIG = 2,      /* invalid arguments, shapes or settings */
    TW_ERR_NUMERICAL = 3,   /* NaN, negative density, non-convergence, runaway profile */
    TW_ERR_DOMAIN = 4,      /* physically invalid values (T <= 0, eta <= 0, ...) */
    TW_ERR_IO = 5,          /* unreadable or malformed files */
    TW_ERR_UNSUPPORTED = 6, /* valid request without a closed form */
    TW_ERR_INTERNAL = 7
} tw_status;

typedef enum tw_step_rule { TW_RULE_MIDPOINT = 0, TW_RULE_DEPARTURE = 1 } tw_step_rule;

typedef enum tw_law_kind {
    TW_LAW_FICK = 0,
    TW_LAW_CHAPMAN = 1,
    TW_LAW_VANKAMPEN = 2,
    TW_LAW_RANDOMWALK = 3,
    TW_LAW_THERMOPHORETIC = 4
} tw_law_kind;

/* Uniform periodic box; in 1D set cells[1] = 1 and extent[1] = 1. */
typedef struct tw_domain {
    int dim;
    int cells[2];
    double extent[2];
} tw_domain;

typedef struct tw_grid tw_grid;         /* cell-centred field plus file metadata */
typedef struct tw_profile tw_profile;   /* walk length and traveling time */
typedef struct tw_ensemble tw_ensemble; /* particles of the gridless walk */
typedef struct tw_law tw_law;           /* flux law with sampled coefficients */
typedef struct tw_solver tw_solver;     /* finite-volume state */

typedef struct tw_sim_stats {
    uint64_t total_steps;
    uint64_t max_steps;
} tw_sim_stats;

typedef struct tw_comparison {
    double l1, l2, linf, rms, bias, relative_l2;
} tw_comparison;

typedef struct tw_uniformity {
    double region_rms[4];
    double ratio;
} tw_uniformity;

typedef struct tw_physical_params {
    double k_boltzmann;
    double mass;
    double radius;
    double eta0;
    double T0;
    double viscosity_exponent;
    double constant_viscosity; /* used instead of the power law when > 0 */
} tw_physical_params;

TW_API const char* tw_version(void);
TW_API const char* tw_last_error(void);
TW_API const char* tw_status_name(tw_status status);

/* ---- grids ------------------------------------------------------------ */

TW_API tw_status tw_grid_create(const tw_domain* domain, double fill, tw_grid** out);
TW_API tw_status tw_grid_from_values(const tw_domain* domain, const double* values, size_t count, tw_grid** out);
TW_API tw_status tw_grid_copy(const tw_grid* grid, tw_grid** out);
TW_API void tw_grid_free(tw_grid* grid);
TW_API tw_status tw_grid_domain(const tw_grid* grid, tw_domain* out);
TW_API size_t tw_grid_size(const tw_grid* grid);
/* Row-major, x fastest. Valid until the grid is modified or freed. */
TW_API const double* tw_grid_values(const tw_grid* grid);
TW_API tw_status tw_grid_set_values(tw_grid* grid, const double* values, size_t count);
TW_API tw_status tw_grid_normalize(tw_grid* grid);

TW_API tw_status tw_grid_set_meta(tw_grid* grid, const char* key, const char* value);
/* NULL when the key is absent. */
TW_API const char* tw_grid_get_meta(const tw_grid* grid, const char* key);
TW_API tw_status tw_grid_read(const char* path, tw_grid** out);
TW_API tw_status tw_grid_write(const tw_grid* grid, const char* path);
TW_API tw_status tw_grid_write_plot_table(const tw_grid* grid, const char* path);

/* ---- walk profiles and derived fields ----------------------------------- */

TW_API tw_status tw_profile_paper_fig2(tw_profile** out);
TW_API tw_status tw_profile_constant(double step_length, double step_time, tw_profile** out);
/* D prescribed, S = sqrt(T) with T = t_offset + t_slope * x. */
TW_API tw_status tw_profile_sqrt_temperature(int dim, double diffusivity, double t_offset, double t_slope,
                                             tw_profile** out);
TW_API tw_status tw_profile_sqrt_temperature_grid(double diffusivity, const tw_grid* temperature, tw_profile** out);
TW_API tw_status tw_profile_sampled(const tw_grid* step_length, const tw_grid* step_time, tw_profile** out);
TW_API void tw_profile_free(tw_profile* profile);
TW_API const char* tw_profile_name(const tw_profile* profile);

TW_API tw_status tw_profile_eval(const tw_profile* profile, const tw_domain* domain, double x, double y,
                                 double* step_length, double* step_time);
TW_API tw_status tw_profile_validate(const tw_profile* profile, const tw_domain* domain);
TW_API tw_status tw_sample_diffusivity(const tw_profile* profile, const tw_domain* domain, tw_grid** out);
TW_API tw_status tw_sample_walk_speed(const tw_profile* profile, const tw_domain* domain, tw_grid** out);
/* Mean-1 grid of 1/S. */
TW_API tw_status tw_theoretical_steady_state(const tw_grid* speed, tw_grid** out);

TW_API void tw_physical_params_default(tw_physical_params* params);
TW_API tw_status tw_speed_from_temperature(const tw_grid* temperature, const tw_physical_params* params,
                                           int nondimensional, tw_grid** out);
TW_API tw_status tw_einstein_diffusivity(double T, const tw_physical_params* params, double* out);
/* Built-in S = c sqrt(T); both results are independent of c. */
TW_API tw_status tw_soret_coefficient_sqrt(double T, double* out);
TW_API tw_status tw_thermal_diffusivity_sqrt(double D, double T, double* out);

/* ---- particles ---------------------------------------------------------- */

TW_API tw_status tw_ensemble_create(const tw_domain* domain, size_t count, uint64_t seed, int track_displacement,
                                    tw_ensemble** out);
TW_API tw_status tw_ensemble_copy(const tw_ensemble* ensemble, tw_ensemble** out);
TW_API void tw_ensemble_free(tw_ensemble* ensemble);
TW_API size_t tw_ensemble_size(const tw_ensemble* ensemble);
/* Copies coordinates into x and y (y may be NULL in 1D); each must hold size() values. */
TW_API tw_status tw_ensemble_positions(const tw_ensemble* ensemble, double* x, double* y);
TW_API tw_status tw_simulate(tw_ensemble* ensemble, const tw_profile* profile, double t_final, tw_step_rule rule,
                             unsigned workers, uint64_t step_cap, tw_sim_stats* stats);
TW_API tw_status tw_histogram(const tw_ensemble* ensemble, int bins_x, int bins_y, unsigned workers, tw_grid** out);
TW_API tw_status tw_variance(const tw_ensemble* before, const tw_ensemble* after, double t, double* diffusivity,
                             double* standard_error);

/* Uniform 1D lattice with the given traveling times: `walkers` particles
 * start uniformly and walk until time t; returns the mean-1 occupancy density. */
TW_API tw_status tw_lattice_run(const double* site_dt, int sites, double extent, size_t walkers, uint64_t seed,
                                double t, unsigned workers, tw_grid** out);

/* ---- finite volumes ----------------------------------------------------- */

/* Coefficient grids by kind: FICK/CHAPMAN (kappa), VANKAMPEN (D, T),
 * RANDOMWALK (D, S), THERMOPHORETIC (D, D_T, T). Unused slots must be NULL. */
TW_API tw_status tw_law_create(tw_law_kind kind, const tw_grid* a, const tw_grid* b, const tw_grid* c, tw_law** out);
TW_API tw_status tw_law_from_profile(tw_law_kind kind, const tw_profile* profile, const tw_domain* domain,
                                     tw_law** out);
TW_API void tw_law_free(tw_law* law);
TW_API const char* tw_law_name(const tw_law* law);
TW_API tw_status tw_law_parse(const char* name, tw_law_kind* out);
TW_API tw_status tw_law_face_flux(const tw_law* law, const tw_grid* u, int axis, int i, int j, double* out);
TW_API tw_status tw_law_analytic_steady(const tw_law* law, tw_grid** out);

/* sigma <= 0 selects the default CFL safety factor 0.5. */
TW_API tw_status tw_solver_create(const tw_law* law, const tw_grid* initial, double sigma, tw_solver** out);
TW_API void tw_solver_free(tw_solver* solver);
TW_API tw_status tw_solver_step(tw_solver* solver);
TW_API tw_status tw_solver_advance(tw_solver* solver, double t_final);
TW_API tw_status tw_solver_run_to_steady(tw_solver* solver, double tol, uint64_t max_steps, double* residual);
TW_API tw_status tw_solver_density(const tw_solver* solver, tw_grid** out);
TW_API tw_status tw_solver_info(const tw_solver* solver, double* time, double* dt, uint64_t* steps);

/* ---- analysis ------------------------------------------------------------ */

TW_API tw_status tw_compare(const tw_grid* a, const tw_grid* b, tw_comparison* out);
TW_API tw_status tw_difference(const tw_grid* a, const tw_grid* b, tw_grid** out);
TW_API tw_status tw_noise_uniformity(const tw_grid* diff, tw_uniformity* out);
/* Local estimates are written to x and local up to `capacity` entries;
 * `count` receives the number available. */
TW_API tw_status tw_fit_soret(const tw_grid* u, const tw_grid* T, double* exponent, double* x, double* local,
                              size_t capacity, size_t* count);
TW_API tw_status tw_convergence_rate(const double* h, const double* error, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* THERMOWALK_H */
