#ifndef FOLIUM_H
#define FOLIUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum FoliumStatus {
  FOLIUM_STATUS_OK = 0,
  FOLIUM_STATUS_NULL_POINTER = 1,
  FOLIUM_STATUS_INVALID_UTF8 = 2,
  FOLIUM_STATUS_PARSE_ERROR = 3,
  FOLIUM_STATUS_INVALID_ARGUMENT = 4,
  FOLIUM_STATUS_UNKNOWN_KEY = 5,
  /**
   * A Gröbner computation exceeded its budget.
   */
  FOLIUM_STATUS_INCONCLUSIVE = 6,
  FOLIUM_STATUS_INTERNAL = 7,
} FoliumStatus;

typedef enum FoliumDirection {
  FOLIUM_DIRECTION_TO_ZERO = 0,
  FOLIUM_DIRECTION_TO_INFINITY = 1,
} FoliumDirection;

typedef enum FoliumRelation {
  FOLIUM_RELATION_EQUAL = 0,
  FOLIUM_RELATION_LEFT_IN_RIGHT = 1,
  FOLIUM_RELATION_RIGHT_IN_LEFT = 2,
  FOLIUM_RELATION_INCOMPARABLE = 3,
} FoliumRelation;

typedef struct FoliumForm FoliumForm;

typedef struct FoliumIdeal FoliumIdeal;

typedef struct FoliumPolynomial FoliumPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until the next call.
 */
const char *folium_last_error(void);

const char *folium_version(void);

void folium_string_free(char *s);

/**
 * Parse a polynomial. `nvars = 0` infers the ambient from the highest variable used.
 */
enum FoliumStatus folium_polynomial_parse(const char *source,
                                          uint32_t nvars,
                                          struct FoliumPolynomial **out);

void folium_polynomial_free(struct FoliumPolynomial *p);

enum FoliumStatus folium_polynomial_to_string(const struct FoliumPolynomial *p, char **out);

/**
 * Parse a 1-form. `nvars = 0` infers the ambient.
 */
enum FoliumStatus folium_form_parse(const char *source, uint32_t nvars, struct FoliumForm **out);

/**
 * A catalog form by key, e.g. `omega` or `nu2`.
 */
enum FoliumStatus folium_form_named(const char *key, struct FoliumForm **out);

void folium_form_free(struct FoliumForm *w);

enum FoliumStatus folium_form_to_string(const struct FoliumForm *w, char **out);

/**
 * Foliation degree (or -1 when the form is not projective) and integrability.
 */
enum FoliumStatus folium_form_check(const struct FoliumForm *w,
                                    int64_t *foliation_degree,
                                    bool *integrable);

enum FoliumStatus folium_form_radial_contraction(const struct FoliumForm *w,
                                                 struct FoliumPolynomial **out);

enum FoliumStatus folium_form_singular_ideal(const struct FoliumForm *w, struct FoliumIdeal **out);

/**
 * Limit of the orbit under the subgroup with exponents `weights[0..len]`.
 */
enum FoliumStatus folium_form_limit(const struct FoliumForm *w,
                                    const int64_t *weights,
                                    size_t len,
                                    enum FoliumDirection direction,
                                    struct FoliumForm **out);

/**
 * Basis of the fixing lattice, one vector per line.
 */
enum FoliumStatus folium_form_fixing_lattice(const struct FoliumForm *w, char **out);

/**
 * Whether `num / den` is a first integral of the form.
 */
enum FoliumStatus folium_form_first_integral(const struct FoliumForm *w,
                                             const struct FoliumPolynomial *num,
                                             const struct FoliumPolynomial *den,
                                             bool *holds);

/**
 * Parse an ideal, `ideal(...)` or a product of them.
 */
enum FoliumStatus folium_ideal_parse(const char *source, uint32_t nvars, struct FoliumIdeal **out);

void folium_ideal_free(struct FoliumIdeal *i);

enum FoliumStatus folium_ideal_to_string(const struct FoliumIdeal *i, char **out);

/**
 * Compare zero sets. Zero budget entries mean the defaults.
 */
enum FoliumStatus folium_ideal_variety_compare(const struct FoliumIdeal *left,
                                               const struct FoliumIdeal *right,
                                               uint64_t max_pairs,
                                               uint64_t max_reductions,
                                               enum FoliumRelation *relation);

/**
 * Decimal value of the dimension formula at `s`.
 */
enum FoliumStatus folium_dimension_formula(uint32_t s, char **out);

/**
 * The full claim ledger as JSON (`json = true`) or an aligned text table.
 */
enum FoliumStatus folium_verify_paper(bool json,
                                      uint64_t max_pairs,
                                      uint64_t max_reductions,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLIUM_H */
