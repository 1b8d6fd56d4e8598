#ifndef TORIC_APOLARITY_H
#define TORIC_APOLARITY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a library call.
 */
typedef enum TaStatus {
  TA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TA_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  TA_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed input: bad TOML, bad polynomial, wrong degree, and so on.
   */
  TA_STATUS_INPUT_ERROR = 3,
  /**
   * Well-formed input the mathematics refuses, such as a non-Cartier
   * ample class or a certificate whose ideal is not apolar to the form.
   */
  TA_STATUS_REFUSED = 4,
  /**
   * The library panicked; this is a bug.
   */
  TA_STATUS_PANIC = 5,
} TaStatus;

/**
 * A fan together with its lazily built Cox ring.
 */
typedef struct TaFan TaFan;

/**
 * A form in the dual module of a fan's Cox ring.
 */
typedef struct TaForm TaForm;

/**
 * Catalecticant bounds at one degree.
 */
typedef struct TaBounds {
  size_t catalecticant_rank;
  bool cartier;
  size_t border_lower;
  size_t rank_lower;
  /**
   * Meaningful only when `cartier` is set.
   */
  size_t cactus_lower;
} TaBounds;

/**
 * Outcome of a length estimate.
 */
typedef struct TaLength {
  size_t value;
  bool stabilized;
} TaLength;

/**
 * Outcome of a cactus certificate.
 */
typedef struct TaCactus {
  size_t length;
  bool stabilized;
  /**
   * `cr(F) <= cactus_upper` when `stabilized`.
   */
  size_t cactus_upper;
  /**
   * `r(F) <= rank_upper` when `has_rank_upper`.
   */
  bool has_rank_upper;
  size_t rank_upper;
} TaCactus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The caller
 * owns the string.
 */
char *ta_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ta_string_free(char *s);

/**
 * Builds a fan from the text of a TOML fan file.
 *
 * # Safety
 * `toml` must be a valid C string and `out` a valid pointer.
 */
enum TaStatus ta_fan_from_toml(const char *toml, struct TaFan **out_fan);

/**
 * One of the bundled surfaces: `hirzebruch`, `weighted_plane` or `fake_plane`.
 *
 * # Safety
 * `name` must be a valid C string and `out` a valid pointer.
 */
enum TaStatus ta_fan_bundled(const char *name, struct TaFan **out_fan);

/**
 * # Safety
 * `fan` must be null or a handle from this library, not yet freed.
 */
void ta_fan_free(struct TaFan *fan);

/**
 * Number of rays, which is also the number of Cox coordinates.
 *
 * # Safety
 * `fan` must be a valid handle.
 */
size_t ta_fan_num_rays(const struct TaFan *fan);

/**
 * Class group and variable degrees, e.g. `Cl = Z x Z/3; deg a0=(1,0) ...`.
 *
 * # Safety
 * `fan` must be a valid handle and `out` a valid pointer.
 */
enum TaStatus ta_fan_class_group(const struct TaFan *fan, char **out_text);

/**
 * Whether a degree such as `"2,1"` or `"3;0"` is a Cartier class.
 *
 * # Safety
 * `fan` must be a valid handle, `degree` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_fan_is_cartier(const struct TaFan *fan, const char *degree, bool *out_flag);

/**
 * Parses a homogeneous form written in the dual coordinates.
 *
 * # Safety
 * `fan` must be a valid handle, `form` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_form_parse(const struct TaFan *fan, const char *form, struct TaForm **out_form);

/**
 * # Safety
 * `form` must be null or a handle from this library, not yet freed.
 */
void ta_form_free(struct TaForm *form);

/**
 * Degree of the form as text. The caller owns the string.
 *
 * # Safety
 * `form` must be a valid handle and `out` a valid pointer.
 */
enum TaStatus ta_form_degree(const struct TaForm *form, char **out_text);

/**
 * Hilbert function of the apolar algebra at one degree.
 *
 * # Safety
 * `form` must be a valid handle, `degree` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_form_hilbert(const struct TaForm *form, const char *degree, size_t *out_value);

/**
 * Rank of the catalecticant matrix at `beta`.
 *
 * # Safety
 * `form` must be a valid handle, `beta` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_form_catalecticant_rank(const struct TaForm *form,
                                         const char *beta,
                                         size_t *out_rank);

/**
 * Rank lower bounds from the catalecticant at `beta`.
 *
 * # Safety
 * `form` must be a valid handle, `beta` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_form_bounds(const struct TaForm *form,
                             const char *beta,
                             struct TaBounds *out_bounds);

/**
 * Whether the ideal spanned by comma-separated generators lies in the
 * apolar ideal of the form.
 *
 * # Safety
 * `form` must be a valid handle, `ideal` a valid C string, `out` a valid pointer.
 */
enum TaStatus ta_form_contains(const struct TaForm *form, const char *ideal, bool *out_flag);

/**
 * Length of the scheme cut out by an ideal, sampled along multiples of an
 * ample Cartier class.
 *
 * # Safety
 * `fan` must be a valid handle, `ideal` and `ample` valid C strings, `out` a valid pointer.
 */
enum TaStatus ta_length_estimate(const struct TaFan *fan,
                                 const char *ideal,
                                 const char *ample,
                                 size_t window,
                                 size_t max_k,
                                 struct TaLength *out_length);

/**
 * Containment check plus length estimate.
 *
 * # Safety
 * `form` must be a valid handle, `ideal` and `ample` valid C strings, `out` a valid pointer.
 */
enum TaStatus ta_cactus_certificate(const struct TaForm *form,
                                    const char *ideal,
                                    const char *ample,
                                    size_t window,
                                    size_t max_k,
                                    bool reduced,
                                    struct TaCactus *out_cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_APOLARITY_H */
