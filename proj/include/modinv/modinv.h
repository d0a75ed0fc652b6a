#ifndef MODINV_MODINV_H
#define MODINV_MODINV_H

/* C interface to the modular invariant engine. Every function returning
 * modinv_status leaves a message in modinv_last_error() on failure; strings
 * handed out through char** must be released with modinv_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(MODINV_BUILDING_LIBRARY)
#define MODINV_API __attribute__((visibility("default")))
#else
#define MODINV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct modinv_context modinv_context;
typedef struct modinv_element modinv_element;

typedef enum {
    MODINV_OK = 0,
    MODINV_E_INVALID_ARGUMENT = 1,
    MODINV_E_CONTEXT_MISMATCH = 2,
    MODINV_E_INDEX_OUT_OF_RANGE = 3,
    MODINV_E_SYNTAX = 4,
    MODINV_E_NOT_DIVISIBLE = 5,
    MODINV_E_OVERFLOW = 6,
    MODINV_E_UNKNOWN_ID = 7,
    MODINV_E_HYPOTHESIS = 8,
    MODINV_E_INTERNAL = 9
} modinv_status;

/* Short name such as "syntax" or "unknown_id". */
MODINV_API const char* modinv_status_name(modinv_status status);
/* Message of the last failure on the calling thread; "" if none. */
MODINV_API const char* modinv_last_error(void);
MODINV_API void modinv_string_free(char* s);

/* p must be an odd prime, 1 <= n <= 8. */
MODINV_API modinv_status modinv_context_new(uint32_t p, int n, modinv_context** out);
MODINV_API void modinv_context_free(modinv_context* ctx);

/* Evaluates an expression of the command line grammar. */
MODINV_API modinv_status modinv_eval(const modinv_context* ctx, const char* expr, modinv_element** out);
/* Parses canonical element text such as "2*x1*y2^3 + y1". */
MODINV_API modinv_status modinv_element_parse(const modinv_context* ctx, const char* text, modinv_element** out);
MODINV_API modinv_status modinv_element_from_json(const char* json, modinv_element** out);
MODINV_API void modinv_element_free(modinv_element* e);

MODINV_API modinv_status modinv_element_to_text(const modinv_element* e, char** out);
MODINV_API modinv_status modinv_element_to_json(const modinv_element* e, char** out);
MODINV_API size_t modinv_element_terms(const modinv_element* e);
/* 1 and *degree set for a non-zero homogeneous element, 0 otherwise. */
MODINV_API int modinv_element_degree(const modinv_element* e, uint64_t* degree);
/* 1 if equal (same context and terms), 0 otherwise. */
MODINV_API int modinv_element_equal(const modinv_element* a, const modinv_element* b);

/* Canonical re-printing of an expression (parse then print). */
MODINV_API modinv_status modinv_expr_normalize(const char* expr, char** out);

/* Applies `trials` random upper unitriangular matrices drawn from `seed` and
 * reports in *invariant whether every one fixes the element. */
MODINV_API modinv_status modinv_unitriangular_check(const modinv_element* e, uint64_t seed, int trials,
                                                    int* invariant);

/* Newline separated registry ids. */
MODINV_API modinv_status modinv_identity_ids(char** out);
/* One case. `params` is a whitespace separated list of name=value with
 * lists written as 0,1. *passed is 1 on pass. */
MODINV_API modinv_status modinv_verify_case(const char* id, const char* params, int json, char** report,
                                            int* passed);
/* Sweeps one id (or every id when id is NULL). An empty prime list uses each
 * id's default primes. profile: 0 quick, 1 full. threads 0 = all cores. */
MODINV_API modinv_status modinv_verify_sweep(const char* id, const uint32_t* primes, size_t nprimes, int profile,
                                             int json, int timings, unsigned threads, char** report,
                                             int* all_passed);

/* which is 'I' or 'J'. Lists the set with, for J, the block decomposition
 * and the exponents b and c. */
MODINV_API modinv_status modinv_index_set(uint32_t p, unsigned u, unsigned v, char which, int json, char** out);

#ifdef __cplusplus
}
#endif

#endif
