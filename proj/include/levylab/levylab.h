#ifndef LEVYLAB_H
#define LEVYLAB_H

/* C API for the levylab first-exit-time laboratory.
 *
 * The library runs configuration-driven experiment pipelines (Monte-Carlo
 * exit times, the nonlocal mean-exit solver, scaling-condition checks,
 * asymptotic predictors and fits, sampler validation) and writes CSV.
 *
 * All functions returning int use the status codes below. Handles are
 * opaque; one handle must not be used from two threads at once.
 */

#ifdef __cplusplus
extern "C" {
#endif

#define LEVYLAB_OK 0
#define LEVYLAB_ERR_CONFIG 1    /* malformed config / bad argument */
#define LEVYLAB_ERR_NUMERICAL 2 /* quadrature, solver or path failure */
#define LEVYLAB_ERR_QUALITY 3   /* censoring / inconclusive quality gate */

typedef struct levylab_run levylab_run;

/* Create / destroy an experiment context. Returns NULL on allocation
 * failure. */
levylab_run* levylab_run_new(void);
void levylab_run_free(levylab_run* run);

/* Load a flat key-value config file (dotted keys, '#' comments). */
int levylab_run_load_config(levylab_run* run, const char* path);

/* Set or override one key, e.g. ("mc.seed", "42") or
 * ("sweep.epsilons", "0.1,0.05"). */
int levylab_run_set(levylab_run* run, const char* key, const char* value);

/* Execute a subcommand: "exit-mc", "solve", "predict", "conditions",
 * "fit" or "validate-sampler". CSV goes to out_path ("-" or NULL for
 * stdout); diagnostics go to stderr. Returns a status code. */
int levylab_run_exec(levylab_run* run, const char* subcommand,
                     const char* out_path);

/* Message for the last non-OK status on this handle; valid until the next
 * call on the same handle. Never NULL. */
const char* levylab_run_last_error(const levylab_run* run);

/* alpha / (a^-alpha + b^-alpha), the stable-noise mean-exit prefactor. */
int levylab_stable_exit_prefactor(double alpha, double a, double b,
                                  double* out);

/* Tail mass (2/alpha) r^-alpha of the unit alpha-stable jump measure. */
int levylab_stable_tail_mass(double alpha, double r, double* out);

const char* levylab_version(void);

#ifdef __cplusplus
}
#endif

#endif /* LEVYLAB_H */
