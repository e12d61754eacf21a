#ifndef KMLAT_KMLAT_H
#define KMLAT_KMLAT_H

/* C interface to the kmlat engine. Results come back as JSON strings
 * (schema "kmlat-report-v1") that the caller releases with
 * kmlat_string_free. Every call returns a kmlat_status; on failure the
 * context keeps the error name and detail. */

#include <stddef.h>
#include <stdint.h>

#if defined(KMLAT_BUILDING_LIBRARY)
#define KMLAT_API __attribute__((visibility("default")))
#else
#define KMLAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kmlat_status {
  KMLAT_OK = 0,
  KMLAT_NON_PRIME = 1,
  KMLAT_DEGREE_TOO_LARGE = 2,
  KMLAT_DIVISION_BY_ZERO = 3,
  KMLAT_SPEC_MISMATCH = 4,
  KMLAT_DEGREE_WINDOW_EXCEEDED = 5,
  KMLAT_PRECISION_EXHAUSTED = 6,
  KMLAT_NOT_A_UNIT = 7,
  KMLAT_NON_INVERTIBLE = 8,
  KMLAT_ZERO_DETERMINANT = 9,
  KMLAT_ODD_CHARACTERISTIC = 10,
  KMLAT_WINDOW_TOO_LARGE = 11,
  KMLAT_UNSUPPORTED_ACTION_DOMAIN = 12,
  KMLAT_MALFORMED_WORD = 13,
  KMLAT_RADIUS_EXCEEDED = 14,
  KMLAT_SIZE_CAP_EXCEEDED = 15,
  KMLAT_NOT_A_SUBGROUP = 16,
  KMLAT_NOT_FOUND = 17,
  KMLAT_SEARCH_BUDGET_EXCEEDED = 18,
  KMLAT_WRONG_FIXED_VERTEX = 19,
  KMLAT_NOT_A_HOMOMORPHISM = 20,
  KMLAT_INVALID_INPUT = 21,
  KMLAT_MIN_UNDEFINED = 22,
  KMLAT_KIND_INADMISSIBLE = 23,
  KMLAT_PARSE_ERROR = 24,
  KMLAT_INTERNAL = 99
} kmlat_status;

typedef struct kmlat_context kmlat_context;
typedef struct kmlat_field kmlat_field;

/* Flags use -1 for "not applicable", 0 for false, 1 for true. */
typedef struct kmlat_classification_input {
  int p;
  long long q;
  int m;
  int levi_pgl; /* 0: PSL Levi quotient, 1: PGL */
  long long z_order;
  int zmi_in_zg;
  int qi_in_zg;
  int qi0_in_zg;
  int qi0_nontrivial;
} kmlat_classification_input;

KMLAT_API const char* kmlat_version(void);
KMLAT_API const char* kmlat_status_name(kmlat_status status);

KMLAT_API kmlat_context* kmlat_context_new(uint64_t seed);
KMLAT_API void kmlat_context_free(kmlat_context* ctx);
KMLAT_API kmlat_status kmlat_context_set_max_elements(kmlat_context* ctx, size_t cap);
/* Negative indent gives compact JSON. */
KMLAT_API kmlat_status kmlat_context_set_json_indent(kmlat_context* ctx, int indent);
KMLAT_API kmlat_status kmlat_last_status(const kmlat_context* ctx);
/* Detail text of the last failure, "" after success. Owned by ctx. */
KMLAT_API const char* kmlat_last_error(const kmlat_context* ctx);

KMLAT_API void kmlat_string_free(char* s);

KMLAT_API kmlat_status kmlat_field_new(kmlat_context* ctx, int q, kmlat_field** out);
KMLAT_API void kmlat_field_free(kmlat_field* field);
KMLAT_API int kmlat_field_order(const kmlat_field* field);
/* "p^a/c0,...,ca" */
KMLAT_API kmlat_status kmlat_field_spec(kmlat_context* ctx, const kmlat_field* field, char** out);

KMLAT_API void kmlat_classification_input_init(kmlat_classification_input* in);
KMLAT_API kmlat_status kmlat_classify(kmlat_context* ctx, const kmlat_classification_input* in,
                                      char** out);
KMLAT_API kmlat_status kmlat_min_covolume(kmlat_context* ctx, const kmlat_classification_input* in,
                                          char** out);

/* ambient: "sl2", "psl2" or "pgl2" */
KMLAT_API kmlat_status kmlat_dickson(kmlat_context* ctx, const kmlat_field* field, const char* ambient,
                                     char** out);

/* kind: "cyclic_p2", "torus_normalizer" or "exceptional"; type ("SL2(3)",
 * "SL2(5)", "2S4") is required for exceptional and ignored otherwise.
 * radius bounds the reduced words used in the normal-form check. */
KMLAT_API kmlat_status kmlat_verify(kmlat_context* ctx, const kmlat_field* field, const char* kind,
                                    const char* type, int radius, char** out);

/* word: "x1:3,x2.1:2"; edge: "base", "L:0,2", "R:1"; mode: "identity" or
 * "twisted". crosscheck != 0 also compares with the matrix action (m = 2). */
KMLAT_API kmlat_status kmlat_km_act(kmlat_context* ctx, const kmlat_field* field, int m,
                                    const char* word, const char* edge, const char* mode,
                                    int crosscheck, char** out);

KMLAT_API kmlat_status kmlat_zp_test(kmlat_context* ctx, const kmlat_field* field, int max_pairs,
                                     char** out);

/* samples: number of random triples for the conjugation identity check. */
KMLAT_API kmlat_status kmlat_dihedral_search(kmlat_context* ctx, const kmlat_field* field, int window,
                                             int samples, char** out);

/* Matrices are "a,b;c,d" with Laurent entries such as "t^2+1". */
KMLAT_API kmlat_status kmlat_tree_distance(kmlat_context* ctx, const kmlat_field* field,
                                           const char* m1, const char* m2, char** out);
KMLAT_API kmlat_status kmlat_tree_neighbors(kmlat_context* ctx, const kmlat_field* field,
                                            const char* vertex, char** out);
/* Permutation of the neighbours of vertex induced by g, which must fix it. */
KMLAT_API kmlat_status kmlat_tree_permutation(kmlat_context* ctx, const kmlat_field* field,
                                              const char* g, const char* vertex, char** out);

#ifdef __cplusplus
}
#endif

#endif
