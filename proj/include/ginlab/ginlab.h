/* ginlab: generic initial ideals of complete intersections, their Newton
 * polyhedra, and asymptotic multiplier ideals.
 *
 * Every function returns a ginlab_status. On failure, ginlab_last_error()
 * describes the problem (per thread, valid until the next call on that
 * thread). Strings returned through `char** out` are JSON documents owned by
 * the caller and released with ginlab_free_string.
 *
 * `field` arguments accept "q" or "fp:P" (also "Q", "F<P>"); NULL selects the
 * default documented for each function. */
#ifndef GINLAB_GINLAB_H
#define GINLAB_GINLAB_H

#include <stdint.h>

#if defined(_WIN32)
#define GINLAB_API __declspec(dllexport)
#else
#define GINLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ginlab_status {
  GINLAB_OK = 0,
  GINLAB_ERR_INVALID = 1, /* bad argument or violated precondition */
  GINLAB_ERR_PARSE = 2,   /* malformed ideal text or polynomial */
  GINLAB_ERR_COMPUTE = 3, /* no certified answer (e.g. samples never agreed) */
  GINLAB_ERR_IO = 4,      /* file or cache failure */
  GINLAB_ERR_INTERNAL = 5
} ginlab_status;

/* A homogeneous ideal with its ring and optional complete intersection type. */
typedef struct ginlab_ideal ginlab_ideal;

GINLAB_API const char* ginlab_version(void);
GINLAB_API const char* ginlab_last_error(void);
/* Line and column of the last parse error, 0 when unknown. */
GINLAB_API void ginlab_last_error_location(uint64_t* line, uint64_t* column);
GINLAB_API void ginlab_free_string(char* s);

GINLAB_API ginlab_status ginlab_ideal_load(const char* path, ginlab_ideal** out);
GINLAB_API ginlab_status ginlab_ideal_parse(const char* text, ginlab_ideal** out);
/* degrees "2,3"; style "diagonal" or "generic" (NULL: diagonal). Regularity
 * is certified over F_32003. */
GINLAB_API ginlab_status ginlab_ideal_make_ci(const char* degrees, uint32_t vars, const char* style, uint64_t seed,
                                              ginlab_ideal** out);
GINLAB_API void ginlab_ideal_free(ginlab_ideal* ideal);
/* {ring, generators, type} */
GINLAB_API ginlab_status ginlab_ideal_describe(const ginlab_ideal* ideal, char** out);

/* Options shared by the gin-based commands. */
typedef struct ginlab_options {
  const char* field;     /* NULL: the ideal's own field */
  int use_cache;         /* nonzero: read and write the result cache */
  const char* cache_dir; /* NULL: $GINLAB_CACHE or ./.ginlab-cache */
} ginlab_options;

/* gin(I^power). `options` may be NULL (own field, no cache). */
GINLAB_API ginlab_status ginlab_gin(const ginlab_ideal* ideal, uint32_t power, uint64_t seed,
                                    const ginlab_options* options, char** out);
/* gin(I^n) for n = 1..n_max with graded containment checks. */
GINLAB_API ginlab_status ginlab_gin_sequence(const ginlab_ideal* ideal, uint32_t n_max, uint64_t seed,
                                             const ginlab_options* options, char** out);
/* Newton polyhedron of gin(I^power); facets and complement volume when
 * `halfspaces` is nonzero. */
GINLAB_API ginlab_status ginlab_polytope(const ginlab_ideal* ideal, uint32_t power, uint64_t seed,
                                         const ginlab_options* options, int halfspaces, char** out);
/* J((c/p) gin(I^p)) enumerated up to total degree `bound`; c like "1" or "3/2". */
GINLAB_API ginlab_status ginlab_multiplier(const ginlab_ideal* ideal, uint32_t p, uint64_t seed,
                                           const ginlab_options* options, const char* c, uint32_t bound, char** out);
/* Closed-form asymptotic multiplier ideal of a type-(degrees) complete
 * intersection in r variables. bound 0 selects the default. */
GINLAB_API ginlab_status ginlab_multiplier_ci(const char* degrees, const char* c, uint32_t bound, char** out);
/* Eliahou-Kervaire Betti table of gin(I^power). */
GINLAB_API ginlab_status ginlab_betti(const ginlab_ideal* ideal, uint32_t power, uint64_t seed,
                                      const ginlab_options* options, char** out);
/* HF(R/gin(I^power), d) for d = 0..dmax. */
GINLAB_API ginlab_status ginlab_hilbert(const ginlab_ideal* ideal, uint32_t power, uint64_t seed,
                                        const ginlab_options* options, uint32_t dmax, char** out);
/* Full complete-intersection verification against the ideal's declared type.
 * `field` NULL selects F_32003 (entries n <= 2 are replicated over Q).
 * *overall is set to 1 when no check failed. */
GINLAB_API ginlab_status ginlab_verify_ci(const ginlab_ideal* ideal, uint32_t n_max, uint64_t seed, const char* field,
                                          int* overall, char** out);

#ifdef __cplusplus
}
#endif

#endif
