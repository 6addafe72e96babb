#ifndef GPK_H
#define GPK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpkCandidateMode {
  GPK_CANDIDATE_MODE_ASCENDING = 0,
  GPK_CANDIDATE_MODE_SHUFFLED = 1,
} GpkCandidateMode;

typedef enum GpkStatus {
  GPK_STATUS_OK = 0,
  GPK_STATUS_NULL_POINTER = 1,
  GPK_STATUS_INVALID_ARGUMENT = 2,
  GPK_STATUS_GUARD_EXCEEDED = 3,
  GPK_STATUS_PROMISE_VIOLATION = 4,
  GPK_STATUS_PARSE_ERROR = 5,
  GPK_STATUS_PANIC = 6,
} GpkStatus;

/**
 * Opaque finite Abelian group.
 */
typedef struct GpkGroup GpkGroup;

/**
 * Opaque function table with an oracle-call counter.
 */
typedef struct GpkOracle GpkOracle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string, truncating if needed. Returns the full message
 * length in bytes, excluding the terminator.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t gpk_last_error(char *buf, size_t len);

/**
 * Builds the group `Z/orders[0] x ... x Z/orders[len-1]`.
 *
 * # Safety
 * `orders` must point to `len` readable values and `out` must be writable.
 */
enum GpkStatus gpk_group_new(const size_t *orders, size_t len, struct GpkGroup **out);

/**
 * # Safety
 * `group` must be null or a handle from [`gpk_group_new`] not yet freed.
 */
void gpk_group_free(struct GpkGroup *group);

/**
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum GpkStatus gpk_group_order(const struct GpkGroup *group, size_t *out);

/**
 * Least common multiple of the factor orders.
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum GpkStatus gpk_group_exponent(const struct GpkGroup *group, size_t *out);

/**
 * Oracle `f: domain -> codomain` with `f(i) = table[i]`, all as indices.
 * The groups are copied; their handles stay owned by the caller.
 *
 * # Safety
 * Both groups must be live handles, `table` must point to `len` readable
 * values and `out` must be writable.
 */
enum GpkStatus gpk_oracle_from_table(const struct GpkGroup *domain,
                                     const struct GpkGroup *codomain,
                                     const size_t *table,
                                     size_t len,
                                     struct GpkOracle **out);

/**
 * Oracle from the JSON table format (`orders_G`, `orders_H`, `table`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum GpkStatus gpk_oracle_from_json(const char *json, struct GpkOracle **out);

/**
 * # Safety
 * `oracle` must be null or a handle not yet freed.
 */
void gpk_oracle_free(struct GpkOracle *oracle);

/**
 * Oracle calls made through this handle so far.
 *
 * # Safety
 * `oracle` must be a live handle and `out` writable.
 */
enum GpkStatus gpk_oracle_calls(const struct GpkOracle *oracle, uint64_t *out);

/**
 * # Safety
 * `oracle` must be a live handle.
 */
enum GpkStatus gpk_oracle_reset_calls(struct GpkOracle *oracle);

/**
 * One simulated phase kick-back run with marker `chi_marker`; writes the
 * measured domain index. Counts one oracle call.
 *
 * # Safety
 * `oracle` must be a live handle and `out` writable.
 */
enum GpkStatus gpk_run_once(struct GpkOracle *oracle, size_t marker, uint64_t seed, size_t *out);

/**
 * Closed-form amplitude `alpha_z` for marker `chi_marker`. No call is
 * counted.
 *
 * # Safety
 * `oracle` must be a live handle; `re` and `im` must be writable.
 */
enum GpkStatus gpk_closed_form_amplitude(const struct GpkOracle *oracle,
                                         size_t marker,
                                         size_t z,
                                         double *re,
                                         double *im);

/**
 * Spectral and structural FBI tests on the table.
 *
 * # Safety
 * `oracle` must be a live handle; both outputs must be writable.
 */
enum GpkStatus gpk_is_fbi(const struct GpkOracle *oracle, bool *spectral, bool *structural);

/**
 * Marker selection on an FBI oracle. Writes `|img(f)|` and the number of
 * phase kick-back calls this run used. `seed` drives both the shuffle
 * (in [`GpkCandidateMode::Shuffled`]) and measurement sampling.
 *
 * # Safety
 * `oracle` must be a live handle; both outputs must be writable.
 */
enum GpkStatus gpk_marker_selection(struct GpkOracle *oracle,
                                    enum GpkCandidateMode mode,
                                    uint64_t seed,
                                    size_t *image_order,
                                    uint64_t *calls);

/**
 * Decides exactly whether `sum_k counts[k] * zeta_modulus^k` vanishes,
 * where `modulus` is the number of counts.
 *
 * # Safety
 * `counts` must point to `modulus` readable values and `out` be writable.
 */
enum GpkStatus gpk_is_zero_sum(const int64_t *counts, size_t modulus, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPK_H */
