#ifndef MIDPOLY_H
#define MIDPOLY_H

/* Generated by cbindgen; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum MpStatus {
  MP_STATUS_OK = 0,
  MP_STATUS_NULL_POINTER = 1,
  MP_STATUS_INVALID_ARGUMENT = 2,
  MP_STATUS_PARSE = 3,
  MP_STATUS_WRONG_SIZE = 4,
  MP_STATUS_AREA_ZERO = 5,
  MP_STATUS_INSUFFICIENT_DATA = 6,
  MP_STATUS_UNSUPPORTED_M = 7,
  MP_STATUS_PANIC = 8,
} MpStatus;

/**
 * Exact rational polygon.
 */
typedef struct MpPolygon MpPolygon;

/**
 * Outcome of the hexagon colinearity check.
 */
typedef struct MpHexagonReport {
  bool all_colinear;
  bool limit_on_line;
  /**
   * 1 on the line, 0 off it, -1 when `G_0` is undefined.
   */
  int32_t g0_on_line;
  /**
   * Index of the first centroid off the line, or -1.
   */
  int64_t first_violation;
  size_t undefined_centroids;
} MpHexagonReport;

/**
 * Counts from a seeded hexagon campaign.
 */
typedef struct MpFuzzSummary {
  size_t trials;
  size_t colinear_passes;
  size_t colinear_failures;
  size_t limit_off_line;
  size_t insufficient_data;
  size_t g0_off_line;
  size_t z_scaling_passes;
  size_t z_scaling_failures;
  bool passed;
} MpFuzzSummary;

/**
 * Slope measurements for the non-colinear counterexample.
 */
typedef struct MpPropositionReport {
  double measured_ratio;
  double expected_ratio;
  double initial_slope;
  double expected_initial_slope;
  bool lines_pairwise_distinct;
  bool passed;
} MpPropositionReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *mp_last_error(void);

/**
 * Parses a polygon document (`{"vertices": [["x", "y"], ...]}`).
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum MpStatus mp_polygon_from_json(const char *json, struct MpPolygon **out);

/**
 * Builds a polygon from `count` vertices given as interleaved `x, y`
 * rationals: `numerators[2k]/denominators[2k]` is the `x` of vertex `k`.
 *
 * # Safety
 * Both arrays must hold `2 * count` elements and `out` must be writable.
 */
enum MpStatus mp_polygon_new(const int64_t *numerators,
                             const int64_t *denominators,
                             size_t count,
                             struct MpPolygon **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be freed twice.
 */
void mp_polygon_free(struct MpPolygon *p);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t mp_polygon_len(const struct MpPolygon *p);

/**
 * Applies `n` midpoint steps and returns a new handle.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum MpStatus mp_polygon_midpoint(const struct MpPolygon *p, size_t n, struct MpPolygon **out);

/**
 * Signed area as an exact string (`"a"` or `"a/b"`) and as a double.
 * Either output may be null.
 *
 * # Safety
 * `p` must be a live handle; non-null outputs must be writable.
 */
enum MpStatus mp_polygon_signed_area(const struct MpPolygon *p, char **exact, double *approx);

/**
 * Area centroid as two exact strings. Fails with `AreaZero` when undefined.
 *
 * # Safety
 * `p` must be a live handle; `x` and `y` must be writable.
 */
enum MpStatus mp_polygon_centroid(const struct MpPolygon *p, char **x, char **y);

/**
 * Serializes the polygon as a document readable by `mp_polygon_from_json`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum MpStatus mp_polygon_to_json(const struct MpPolygon *p, char **out);

/**
 * Exact colinearity check of `G_1 .. G_steps` for a hexagon.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum MpStatus mp_verify_hexagon(const struct MpPolygon *p,
                                size_t steps,
                                struct MpHexagonReport *out);

/**
 * Seeded random hexagon campaign.
 *
 * # Safety
 * `out` must be writable.
 */
enum MpStatus mp_fuzz(uint64_t seed,
                      size_t trials,
                      int64_t bound,
                      size_t steps,
                      struct MpFuzzSummary *out);

/**
 * Slope ratios of the `m`-gon counterexample (`m = 5` or `m >= 7`).
 *
 * # Safety
 * `out` must be writable.
 */
enum MpStatus mp_proposition(size_t m,
                             size_t steps,
                             double tolerance,
                             struct MpPropositionReport *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIDPOLY_H */
