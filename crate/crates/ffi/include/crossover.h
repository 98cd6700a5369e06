#ifndef CROSSOVER_H
#define CROSSOVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Opaque validated zero table.
 */
typedef struct CrossoverTable CrossoverTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a text table of ordinates from `path` with per-ordinate accuracy
 * `epsilon`, returning an owned handle through `out`.
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be valid for writes.
 */
int crossover_table_parse_file(const char *path, double epsilon, struct CrossoverTable **out);

/**
 * Reads a binary cache written by `crossover_table_write_cache` (or the CLI).
 *
 * # Safety
 * `path` must be NUL-terminated; `out` must be valid for writes.
 */
int crossover_table_read_cache(const char *path, struct CrossoverTable **out);

/**
 * Writes the binary cache for `table` to `path`.
 *
 * # Safety
 * `table` must be a live handle from this library; `path` NUL-terminated.
 */
int crossover_table_write_cache(const struct CrossoverTable *table, const char *path);

/**
 * Releases a table handle. Null is a no-op.
 *
 * # Safety
 * `table` must have been returned by this library and not freed before.
 */
void crossover_table_free(struct CrossoverTable *table);

/**
 * Number of ordinates; 0 for null.
 *
 * # Safety
 * `table` must be live or null.
 */
uint64_t crossover_table_count(const struct CrossoverTable *table);

/**
 * Largest ordinate; NaN for null.
 *
 * # Safety
 * `table` must be live or null.
 */
double crossover_table_gamma_max(const struct CrossoverTable *table);

/**
 * Cached compensated sum of 1/gamma; NaN for null.
 *
 * # Safety
 * `table` must be live or null.
 */
double crossover_table_reciprocal_sum(const struct CrossoverTable *table);

/**
 * Declared per-ordinate accuracy; NaN for null.
 *
 * # Safety
 * `table` must be live or null.
 */
double crossover_table_epsilon(const struct CrossoverTable *table);

/**
 * Evaluates `H(T, alpha, omega)`; writes the value and the zero-accuracy
 * bound through the out pointers.
 *
 * # Safety
 * `table` must be live; out pointers must be valid for writes when non-null.
 */
int crossover_evaluate_h(const struct CrossoverTable *table,
                         double alpha,
                         double omega,
                         double t_height,
                         double *out_h,
                         double *out_zero_accuracy);

/**
 * Runs the full certification and returns the JSON report through
 * `out_json` (owned by the caller; free with [`crossover_string_free`]).
 *
 * `mode`: 0 = original, 1 = refined, 2 = rh. Negative `zero_accuracy`
 * derives the budget from the table's epsilon; negative `machine` selects
 * the default budget. Returns `Ok` for a certificate, `Rejected` for a
 * completed run with non-positive margin (the JSON is present either way).
 *
 * # Safety
 * `table` must be live; `out_json` must be valid for writes.
 */
int crossover_certify_json(const struct CrossoverTable *table,
                           double omega,
                           double eta,
                           double alpha,
                           double a_height,
                           double t_height,
                           int mode,
                           double zero_accuracy,
                           double machine,
                           char **out_json);

/**
 * Frees a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void crossover_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSOVER_H */
