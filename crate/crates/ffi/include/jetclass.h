#ifndef JETCLASS_H
#define JETCLASS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JcStatus {
  JC_STATUS_OK = 0,
  JC_STATUS_NULL_ARGUMENT = 1,
  JC_STATUS_INVALID_UTF8 = 2,
  JC_STATUS_PARSE = 3,
  JC_STATUS_INVALID_INPUT = 4,
  JC_STATUS_INTERNAL = 5,
} JcStatus;

typedef enum JcTag {
  JC_TAG_REGULAR = 0,
  JC_TAG_FOLD = 1,
  JC_TAG_CUSP = 2,
  JC_TAG_SWALLOWTAIL = 3,
  JC_TAG_LIPS = 4,
  JC_TAG_BEAK_TO_BEAK = 5,
  JC_TAG_UNCLASSIFIED = 6,
} JcTag;

/**
 * A jet of a map germ at the origin.
 */
typedef struct JcJet JcJet;

/**
 * An ordered list of jets with a common source, target and order.
 */
typedef struct JcMultiJet JcMultiJet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse `text` over the variables `z1..zn, x, y` at the given order.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum JcStatus jc_jet_parse(const char *text, size_t n, uint32_t order, struct JcJet **out);

/**
 * # Safety
 * `jet` must come from [`jc_jet_parse`] and not be used afterwards.
 */
void jc_jet_free(struct JcJet *jet);

/**
 * The jet in the input syntax.
 *
 * # Safety
 * `jet` must be a live handle and `out` a valid pointer.
 */
enum JcStatus jc_jet_to_string(const struct JcJet *jet, char **out);

/**
 * Classification tag and absolute signature; the signature is -1 when the
 * class carries none.
 *
 * # Safety
 * `jet` must be a live handle; the out pointers must be valid.
 */
enum JcStatus jc_classify(const struct JcJet *jet, enum JcTag *tag, int32_t *abs_signature);

/**
 * Local degree at the origin; `defined` is false when it is not defined
 * for the jet's dimensions and form.
 *
 * # Safety
 * `jet` must be a live handle; the out pointers must be valid.
 */
enum JcStatus jc_local_degree(const struct JcJet *jet, int32_t *degree, bool *defined);

/**
 * Codimension of the extended tangent space in the degree-`d` truncation.
 *
 * # Safety
 * `jet` must be a live handle and `codim` a valid pointer.
 */
enum JcStatus jc_tangent_codim(const struct JcJet *jet, uint32_t d, size_t *codim);

struct JcMultiJet *jc_multijet_new(void);

/**
 * Append a copy of `jet` as the next branch.
 *
 * # Safety
 * Both handles must be live.
 */
enum JcStatus jc_multijet_push(struct JcMultiJet *multi, const struct JcJet *jet);

/**
 * # Safety
 * `multi` must come from [`jc_multijet_new`] and not be used afterwards.
 */
void jc_multijet_free(struct JcMultiJet *multi);

/**
 * Admissibility verdict and stratum label of the multijet.
 *
 * # Safety
 * `multi` must be a live handle; the out pointers must be valid.
 */
enum JcStatus jc_multijet_admissible(const struct JcMultiJet *multi,
                                     bool *admissible,
                                     char **label);

/**
 * Run a command-line invocation (without the program name) and return its
 * rendered report.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings and `out` must be
 * valid.
 */
enum JcStatus jc_run(const char *const *argv, size_t argc, char **out);

/**
 * Message of the last failed call on this thread, or null. The caller owns
 * the returned string.
 */
char *jc_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void jc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETCLASS_H */
