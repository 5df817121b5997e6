#ifndef GAUSSDIAG_H
#define GAUSSDIAG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum GdStatus {
  GD_STATUS_OK = 0,
  GD_STATUS_NULL_ARGUMENT = 1,
  GD_STATUS_INVALID_UTF8 = 2,
  GD_STATUS_PARSE = 3,
  GD_STATUS_INVALID_DIAGRAM = 4,
  GD_STATUS_ILLEGAL_MOVE = 5,
  GD_STATUS_INTERNAL = 6,
} GdStatus;

/**
 * Opaque diagram handle.
 */
typedef struct GdDiagram GdDiagram;

/**
 * Opaque trace handle.
 */
typedef struct GdTrace GdTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next call into the library on the same thread; do not free.
 */
const char *gd_last_error(void);

/**
 * Parses a signed Gauss code into a new diagram.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `out` must be writable.
 */
enum GdStatus gd_diagram_parse(const char *code, struct GdDiagram **out);

/**
 * # Safety
 * `d` must be NULL or a handle from this library not yet freed.
 */
void gd_diagram_free(struct GdDiagram *d);

/**
 * Code read from the basepoint, chords relabelled by first occurrence.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum GdStatus gd_diagram_to_code(const struct GdDiagram *d, char **out);

/**
 * Rotation-minimal code.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum GdStatus gd_diagram_canonical(const struct GdDiagram *d, char **out);

/**
 * Writes 1 to `out` when the diagrams agree up to basepoint rotation, else 0.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be writable.
 */
enum GdStatus gd_diagram_equal(const struct GdDiagram *a, const struct GdDiagram *b, int32_t *out);

/**
 * Number of chords, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
size_t gd_diagram_chord_count(const struct GdDiagram *d);

/**
 * Sum of chord signs, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
int64_t gd_diagram_writhe(const struct GdDiagram *d);

/**
 * Sum of signs of chords crossed by an odd number of other chords, or 0 for
 * NULL.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
int64_t gd_diagram_odd_writhe(const struct GdDiagram *d);

/**
 * Trace taking `d` to the empty diagram, using the built-in variant table.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum GdStatus gd_unknot(const struct GdDiagram *d, struct GdTrace **out);

/**
 * Trace taking `src` to `dst`.
 *
 * # Safety
 * `src`, `dst` must be live handles; `out` must be writable.
 */
enum GdStatus gd_transform(const struct GdDiagram *src,
                           const struct GdDiagram *dst,
                           struct GdTrace **out);

/**
 * One step per line, in the trace file format.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
enum GdStatus gd_trace_to_text(const struct GdTrace *t, char **out);

/**
 * Parses trace text; comment lines are ignored.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum GdStatus gd_trace_parse(const char *text, struct GdTrace **out);

/**
 * Replays `t` from `d`, checking each step, and returns the final diagram.
 *
 * # Safety
 * `d`, `t` must be live handles; `out` must be writable.
 */
enum GdStatus gd_replay(const struct GdDiagram *d, const struct GdTrace *t, struct GdDiagram **out);

/**
 * Number of steps, or 0 for NULL.
 *
 * # Safety
 * `t` must be NULL or a live handle.
 */
size_t gd_trace_len(const struct GdTrace *t);

/**
 * # Safety
 * `t` must be NULL or a handle from this library not yet freed.
 */
void gd_trace_free(struct GdTrace *t);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void gd_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GAUSSDIAG_H */
