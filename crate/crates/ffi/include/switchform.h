#ifndef SWITCHFORM_H
#define SWITCHFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an LP solve.
 */
typedef enum SfLpStatus {
  SF_LP_STATUS_OPTIMAL = 0,
  SF_LP_STATUS_INFEASIBLE = 1,
  SF_LP_STATUS_UNBOUNDED = 2,
} SfLpStatus;

/**
 * Result code of every fallible call. The input, capability and
 * verification codes match the command-line exit codes.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_INVALID_INPUT = 2,
  SF_STATUS_CAPABILITY_EXCEEDED = 3,
  SF_STATUS_VERIFICATION_FAILED = 4,
  SF_STATUS_NULL_POINTER = 5,
  SF_STATUS_INTERNAL = 6,
} SfStatus;

/**
 * Opaque exact-rational LP model.
 */
typedef struct SfModel SfModel;

/**
 * Opaque LP solve result.
 */
typedef struct SfSolution SfSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the LP for an instance document (`{"kind": ...}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_model_from_instance_json(const char *json, struct SfModel **out);

/**
 * Parse a model from LP text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_model_from_lp_text(const char *text, struct SfModel **out);

/**
 * Render a model as LP text. Release the result with [`sf_string_free`].
 *
 * # Safety
 * `model` must come from this library and `out` must be a valid pointer.
 */
enum SfStatus sf_model_to_lp_text(const struct SfModel *model, char **out);

/**
 * Number of variables and rows of a model.
 *
 * # Safety
 * `model` must come from this library; the out pointers must be valid.
 */
enum SfStatus sf_model_size(const struct SfModel *model, size_t *vars, size_t *rows);

/**
 * New model with the step-function objective (`{"T","N","values"}`)
 * priced onto its controls. The input model is left unchanged.
 *
 * # Safety
 * `model` must come from this library, `json` must be a NUL-terminated
 * string and `out` a valid pointer.
 */
enum SfStatus sf_model_attach_objective_json(const struct SfModel *model,
                                             const char *json,
                                             struct SfModel **out);

/**
 * Minimise the model's objective exactly.
 *
 * # Safety
 * `model` must come from this library and `out` a valid pointer.
 */
enum SfStatus sf_model_solve(const struct SfModel *model, struct SfSolution **out);

/**
 * Whether the variables named in `assignment_json` (an object mapping
 * names to `"p/q"` strings) extend to a feasible point of the model.
 *
 * # Safety
 * `model` must come from this library, `assignment_json` must be a
 * NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_model_fix_and_check(const struct SfModel *model,
                                     const char *assignment_json,
                                     bool *out);

/**
 * # Safety
 * `solution` must come from this library and `out` a valid pointer.
 */
enum SfStatus sf_solution_status(const struct SfSolution *solution, enum SfLpStatus *out);

/**
 * Optimal value as `"p/q"`. Fails with `InvalidInput` when the solve did
 * not end optimal. Release the result with [`sf_string_free`].
 *
 * # Safety
 * `solution` must come from this library and `out` a valid pointer.
 */
enum SfStatus sf_solution_value(const struct SfSolution *solution, char **out);

/**
 * Optimal point as a JSON object mapping variable names to `"p/q"`.
 * Release the result with [`sf_string_free`].
 *
 * # Safety
 * `solution` must come from this library and `out` a valid pointer.
 */
enum SfStatus sf_solution_point_json(const struct SfSolution *solution, char **out);

/**
 * Least number of cells a grid needs per horizon for the dwell times
 * `up` and `down` (given as `"p/q"`) to be whole cell counts.
 *
 * # Safety
 * The three inputs must be NUL-terminated strings and `out` a valid pointer.
 */
enum SfStatus sf_dwell_grid_factor(const char *up,
                                   const char *down,
                                   const char *horizon,
                                   size_t *out);

/**
 * Message of the last failed call on this thread, or null if the last
 * call succeeded. Valid until the next library call on this thread.
 */
const char *sf_last_error_message(void);

/**
 * # Safety
 * `text` must be null or a string returned by this library, freed once.
 */
void sf_string_free(char *text);

/**
 * # Safety
 * `model` must be null or a handle from this library, freed once.
 */
void sf_model_free(struct SfModel *model);

/**
 * # Safety
 * `solution` must be null or a handle from this library, freed once.
 */
void sf_solution_free(struct SfSolution *solution);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWITCHFORM_H */
