#ifndef BRAIDTRACE_H
#define BRAIDTRACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define BT_OK 0

/**
 * Invalid input (unknown type, malformed braid, size guards).
 */
#define BT_VALIDATION 2

/**
 * Broken internal invariant, or a panic caught at the boundary.
 */
#define BT_INTERNAL 3

/**
 * Null pointer or malformed C string argument.
 */
#define BT_ARGUMENT 4

/**
 * An opaque computation engine for one Coxeter type.
 *
 * The trace engine borrows the Coxeter system; the system lives in a box
 * whose address is stable for the lifetime of the handle, so the borrow is
 * safely extended to `'static` inside the (private) struct.
 */
typedef struct BtEngine BtEngine;

/**
 * Last error message for the calling thread; valid until the next failing
 * call. Never null.
 */
const char *bt_last_error(void);

/**
 * Create an engine for `type_name` (e.g. "A3", "I2(8)", "BC2", "G2").
 * `data_dir` may be null; it points extra data tables (Fourier matrices
 * for I2(m) beyond the built-ins). On success writes the handle to `out`.
 *
 * # Safety
 * `type_name` must be a valid C string, `data_dir` null or a valid C
 * string, and `out` a valid pointer.
 */
int32_t bt_engine_new(const char *type_name, const char *data_dir, struct BtEngine **out);

/**
 * Release an engine handle. Null is ignored.
 *
 * # Safety
 * `engine` must be null or a pointer returned by [`bt_engine_new`] that has
 * not been freed.
 */
void bt_engine_free(struct BtEngine *engine);

/**
 * Release a string returned by any `bt_*` computation. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not been
 * freed.
 */
void bt_string_free(char *s);

/**
 * Virtual-character-valued Hecke trace of `braid`; writes a JSON object
 * mapping character labels to Laurent-polynomial strings in q^(1/2).
 *
 * # Safety
 * `engine` must be a live handle, `braid` a valid C string, `out` a valid
 * pointer.
 */
int32_t bt_trace(const struct BtEngine *engine, const char *braid, char **out);

/**
 * Normalized trace of `braid`; JSON object mapping character labels to
 * rational-function strings.
 *
 * # Safety
 * Same contract as [`bt_trace`].
 */
int32_t bt_trace0(const struct BtEngine *engine, const char *braid, char **out);

/**
 * Markov trace of `braid`; JSON object of monomial keys "a{i} q{j}", or
 * {"num": ..., "den": ...} when not polynomial.
 *
 * # Safety
 * Same contract as [`bt_trace`].
 */
int32_t bt_markov(const struct BtEngine *engine, const char *braid, char **out);

/**
 * HOMFLY series of the closure of `braid` (type A engines only); same
 * schema as [`bt_markov`].
 *
 * # Safety
 * Same contract as [`bt_trace`].
 */
int32_t bt_homfly(const struct BtEngine *engine, const char *braid, char **out);

/**
 * Writhe of a braid word, without constructing an engine. Returns
 * `BT_VALIDATION` for malformed words (rank is taken from `type_name`).
 *
 * # Safety
 * `type_name` and `braid` must be valid C strings, `out` a valid pointer.
 */
int32_t bt_writhe(const char *type_name, const char *braid, int64_t *out);

#endif  /* BRAIDTRACE_H */
