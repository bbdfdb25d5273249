/* C API for the Gibbs sampler spectral analysis library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions return GS_OK on success; on failure, gs_last_error() describes
 * the problem for the calling thread. Strings returned through char** are
 * heap-allocated and must be released with gs_string_free().
 *
 * Coordinate subsets are passed as flattened 1-based coordinate lists:
 * `subsets` holds the concatenated coordinates, `lens` the per-subset counts.
 */
#ifndef GIBBS_SPECTRA_H
#define GIBBS_SPECTRA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gs_target gs_target;
typedef struct gs_operator gs_operator;

typedef enum {
  GS_OK = 0,
  GS_ERR_CHECK_FAILED = 1, /* a verification ran but did not hold */
  GS_ERR_INVALID_INPUT = 2,
  GS_ERR_INTERNAL = 3
} gs_status;

const char* gs_last_error(void);
void gs_string_free(char* s);

/* --- targets ------------------------------------------------------------ */

/* JSON schema: {"sizes":[...], "weights":[...]} with weights in flat
 * row-major order (first coordinate slowest). */
gs_status gs_target_from_json(const char* json_text, gs_target** out);
gs_status gs_target_random(const int* sizes, int k, uint64_t seed,
                           gs_target** out);
void gs_target_free(gs_target* t);
long gs_target_dim(const gs_target* t);
gs_status gs_target_to_json(const gs_target* t, char** json_out);

/* --- operators ------------------------------------------------------------ */

gs_status gs_op_gibbs_step(const gs_target* t, const int* coords, int n,
                           gs_operator** out);
gs_status gs_op_cycle(const gs_target* t, const int* subsets, const int* lens,
                      int g, gs_operator** out);
gs_status gs_op_mixture(const gs_target* t, const int* subsets, const int* lens,
                        int g, const double* weights, gs_operator** out);
void gs_op_free(gs_operator* op);
gs_status gs_op_to_csv(const gs_operator* op, char** csv_out);
gs_status gs_spectra_json(const gs_operator* op, char** json_out);

/* --- verification suites -------------------------------------------------- */

gs_status gs_solidarity(const gs_target* t, const int* subsets, const int* lens,
                        int g, int weight_samples, uint64_t seed,
                        char** json_out, char** csv_out);

/* keep = marginal coordinates I; subsets/lens give the inner family over I.
 * use_mixture nonzero selects the mixture combination with `weights`
 * (may be NULL for a cycle). */
gs_status gs_collapse_check(const gs_target* t, const int* keep, int n_keep,
                            const int* subsets, const int* lens, int g,
                            int use_mixture, const double* weights,
                            char** json_out);

gs_status gs_two_component(const gs_target* t, const int* y_coords, int n_y,
                           char** json_out);

/* --- hierarchical example -------------------------------------------------- */

/* sampler is "blockA" or "blockB"; emits a CSV trace "step,u,v,w". */
gs_status gs_example_trace(double y, const char* sampler, long steps,
                           uint64_t seed, double u0, double v0, double w0,
                           char** csv_out);
gs_status gs_verify_drift(double y, int grid_points, double half_width,
                          char** json_out);
/* d = d_scale * (2^{3/4} lambda)/(1 - lambda/2^{1/4}); d_scale must be > 1. */
gs_status gs_verify_minorization(double y, double d_scale, int grid_points,
                                 double half_width, char** json_out);
gs_status gs_ergodicity_contrast(double y, long steps, uint64_t seed,
                                 char** json_out);

/* --- full battery ---------------------------------------------------------- */

/* Runs every built-in regression check. Returns GS_OK when all pass and
 * GS_ERR_CHECK_FAILED otherwise; json_out (always set on either of those)
 * lists per-check verdicts. */
gs_status gs_all_checks(long sim_steps, uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* GIBBS_SPECTRA_H */
