#ifndef SWAG_H
#define SWAG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SwagAlgo {
  SWAG_ALGO_TWO_STACKS = 0,
  SWAG_ALGO_TWO_STACKS_LITE = 1,
  SWAG_ALGO_DABA = 2,
  SWAG_ALGO_DABA_LITE = 3,
  SWAG_ALGO_RECALC = 4,
} SwagAlgo;

typedef enum SwagMonoid {
  SWAG_MONOID_SUM = 0,
  SWAG_MONOID_GEO_MEAN = 1,
  SWAG_MONOID_MAX_COUNT = 2,
  SWAG_MONOID_BLOOM = 3,
} SwagMonoid;

typedef enum SwagStatus {
  SWAG_STATUS_OK = 0,
  SWAG_STATUS_NULL_POINTER = 1,
  SWAG_STATUS_UNKNOWN_ALGO = 2,
  SWAG_STATUS_UNKNOWN_MONOID = 3,
  SWAG_STATUS_EMPTY_WINDOW = 4,
  // The value is outside the monoid's input domain.
  SWAG_STATUS_DOMAIN = 5,
  // The operation does not apply to this handle's monoid.
  SWAG_STATUS_UNSUPPORTED = 6,
  SWAG_STATUS_PANIC = 7,
} SwagStatus;

// Opaque window handle.
typedef struct SwagHandle SwagHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an empty window. `algo` and `monoid` take `SwagAlgo` and
// `SwagMonoid` values. On success `*out` owns a handle to release with
// [`swag_free`]; on failure it is set to NULL.
//
// # Safety
// `out` must be valid for writing one pointer.
enum SwagStatus swag_new(uint32_t algo, uint32_t monoid, struct SwagHandle **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `handle` is NULL or came from [`swag_new`] and has not been freed.
void swag_free(struct SwagHandle *handle);

// Appends `value` as the youngest element.
//
// # Safety
// `handle` is NULL or a live handle not used concurrently.
enum SwagStatus swag_insert(struct SwagHandle *handle, double value);

// Removes the oldest element.
//
// # Safety
// As for [`swag_insert`].
enum SwagStatus swag_evict(struct SwagHandle *handle);

// Writes the window's aggregate: the sum, the geometric mean (1 when
// empty), the number of occurrences of the maximum, or the filter's set-bit
// count.
//
// # Safety
// `handle` is NULL or a live handle; `out` is valid for one write.
enum SwagStatus swag_query(const struct SwagHandle *handle, double *out);

// Maximum and its multiplicity, for `SWAG_MONOID_MAX_COUNT` handles. An
// empty window reports `INT64_MIN` and 0.
//
// # Safety
// `handle` is NULL or a live handle; `max` and `count` are valid for one
// write each.
enum SwagStatus swag_query_max_count(const struct SwagHandle *handle,
                                     int64_t *max,
                                     uint64_t *count);

// Membership test against the window's filter, for `SWAG_MONOID_BLOOM`
// handles. False positives are possible, false negatives are not.
//
// # Safety
// `handle` is NULL or a live handle; `out` is valid for one write.
enum SwagStatus swag_might_contain(const struct SwagHandle *handle, double value, bool *out);

// # Safety
// `handle` is NULL or a live handle; `out` is valid for one write.
enum SwagStatus swag_len(const struct SwagHandle *handle, size_t *out);

// Total monoid combines performed by this handle so far.
//
// # Safety
// `handle` is NULL or a live handle; `out` is valid for one write.
enum SwagStatus swag_combine_count(const struct SwagHandle *handle, uint64_t *out);

// Partial aggregates currently stored, side slots included.
//
// # Safety
// `handle` is NULL or a live handle; `out` is valid for one write.
enum SwagStatus swag_aggregate_slots(const struct SwagHandle *handle, size_t *out);

// Static, NUL-terminated description of a `SwagStatus` value.
const char *swag_status_message(uint32_t status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWAG_H */
