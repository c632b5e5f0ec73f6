/* C interface for the vincular counting library. */

#pragma once

/* Generated with cbindgen:0.26.0 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// ABI revision; bump on any breaking change to this header.
#define VNC_ABI_VERSION 1

// Counting family selector.
typedef enum vnc_family {
  VNC_FAMILY_F = 0,
  VNC_FAMILY_G = 1,
  VNC_FAMILY_H = 2,
  VNC_FAMILY_PHI = 3,
} vnc_family;

// Status code returned by every fallible function.
typedef enum vnc_status {
  VNC_STATUS_OK = 0,
  VNC_STATUS_NULL_ARGUMENT,
  VNC_STATUS_INVALID_UTF8,
  VNC_STATUS_PARSE_ERROR,
  VNC_STATUS_OUT_OF_RANGE,
  VNC_STATUS_HORIZON_EXCEEDED,
  VNC_STATUS_UNSUPPORTED,
  VNC_STATUS_BUFFER_TOO_SMALL,
  VNC_STATUS_NOT_REPRESENTABLE,
  VNC_STATUS_INTERNAL_ERROR,
} vnc_status;

// Opaque parsed-pattern handle.
typedef struct vnc_pattern vnc_pattern;

// Opaque exact-series handle.
typedef struct vnc_series vnc_series;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// ABI revision of this library.
uint32_t vnc_abi_version(void);

// Enumerate the single count of size `n` for `family` and `pattern` by
// brute force. Counts past the family's oracle horizon (12 for F/G, 10 for
// H/PHI) are refused unless `force` is set.
//
// # Safety
// `pattern` must be a valid handle and `out` a valid pointer.
enum vnc_status vnc_count(enum vnc_family family,
                          const struct vnc_pattern *pattern,
                          uint32_t n,
                          bool force,
                          uint64_t *out);

// Copy the calling thread's last error message. Null `buf` performs a size
// query via `*written`.
//
// # Safety
// `buf` must have capacity `cap` when non-null.
enum vnc_status vnc_last_error(char *buf, size_t cap, size_t *written);

// Render the pattern back into the dash grammar. With a null `buf` this is
// a size query: `*written` receives the required capacity including the
// terminating NUL.
//
// # Safety
// `p` must be a valid handle; `buf` must have capacity `cap` when non-null.
enum vnc_status vnc_pattern_display(const struct vnc_pattern *p,
                                    char *buf,
                                    size_t cap,
                                    size_t *written);

// # Safety
// `p` must be a handle from [`vnc_pattern_parse`] (or null) and must not be
// used afterwards.
void vnc_pattern_free(struct vnc_pattern *p);

// Number of letters in the pattern; 0 for a null handle.
//
// # Safety
// `p` must be a valid handle or null.
size_t vnc_pattern_len(const struct vnc_pattern *p);

// Parse a pattern in the dash grammar (e.g. `"1-23"`). On success stores a
// new handle in `out`; free it with [`vnc_pattern_free`].
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum vnc_status vnc_pattern_parse(const char *text, struct vnc_pattern **out);

// Coefficient `n` as an exact decimal string (integers as plain decimals,
// other rationals as `p/q`). Null `buf` performs a size query via
// `*written`.
//
// # Safety
// `s` must be a valid handle; `buf` must have capacity `cap` when non-null.
enum vnc_status vnc_series_coeff_string(const struct vnc_series *s,
                                        size_t n,
                                        char *buf,
                                        size_t cap,
                                        size_t *written);

// Coefficient `n` as a `u64`, when it is a non-negative integer that fits.
//
// # Safety
// `s` must be a valid handle and `out` a valid pointer.
enum vnc_status vnc_series_coeff_u64(const struct vnc_series *s, size_t n, uint64_t *out);

// Expand a catalog entry by its exact instance id (e.g. `"G.g21[k=3]"`).
//
// # Safety
// `entry_id` must be a valid NUL-terminated string and `out` a valid
// pointer.
enum vnc_status vnc_series_for_entry(const char *entry_id, size_t order, struct vnc_series **out);

// Compute the counting series of `family` for `pattern` to the given
// truncation order, routing through the closed-form catalog, the recursion
// engines, or enumeration, in that order of preference. The handle stored
// in `out` must be freed with [`vnc_series_free`]. The result's order may
// be lower than requested when only enumeration applies.
//
// # Safety
// `pattern` must be a valid handle and `out` a valid pointer.
enum vnc_status vnc_series_for_pattern(enum vnc_family family,
                                       const struct vnc_pattern *pattern,
                                       size_t order,
                                       struct vnc_series **out);

// # Safety
// `s` must be a handle from a series constructor (or null) and must not be
// used afterwards.
void vnc_series_free(struct vnc_series *s);

// Truncation order of the series (the highest stored coefficient index).
//
// # Safety
// `s` must be a valid handle or null.
size_t vnc_series_order(const struct vnc_series *s);

// Free a string returned by this library.
//
// # Safety
// `s` must come from this library (or be null) and must not be used
// afterwards.
void vnc_string_free(char *s);

// Run the verification harness and return the JSON report as a heap string
// (free with [`vnc_string_free`]). `entry_filter` selects an entry or group
// id; pass null for the whole catalog. `max_n` caps every entry's
// enumeration bound; pass 0 for the per-entry defaults. `all_as_expected`
// (optional) receives whether every observed status matched its pinned
// expectation.
//
// # Safety
// `out_json` must be a valid pointer; `entry_filter` must be a valid string
// when non-null.
enum vnc_status vnc_verify_json(const char *entry_filter,
                                size_t order,
                                uint32_t max_n,
                                char **out_json,
                                bool *all_as_expected);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus
