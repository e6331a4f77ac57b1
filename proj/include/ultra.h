/* C API for the ultrametric toolkit.
 *
 * Conventions:
 *   - Every function returns an ultra_status; 0 is success.
 *   - Output strings (char**) are malloc'd JSON documents; release them
 *     with ultra_free_str.  They are written only on ULTRA_OK, except
 *     that ULTRA_INVALID also writes a {"violations": [...]} document
 *     describing which law failed and on which witness.
 *   - ULTRA_ERR_* leave outputs untouched; ultra_last_error() returns a
 *     message for the most recent failure on the calling thread, valid
 *     until the next call from that thread.
 *   - Point and element arguments are labels (strings) as they appear in
 *     the input documents.  A NULL start label means the first point.
 *   - File formats are documented in the README; rationals travel as
 *     canonical "num/den" strings.
 */
#ifndef ULTRA_H
#define ULTRA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ultra_status {
  ULTRA_OK = 0,
  ULTRA_INVALID = 1,      /* input parsed but violates a checked law   */
  ULTRA_ERR_PARSE = 2,    /* malformed JSON or number                  */
  ULTRA_ERR_ARG = 3,      /* wrong shape, unknown label, bad argument  */
  ULTRA_ERR_LIMIT = 4,    /* documented resource bound exceeded        */
  ULTRA_ERR_INTERNAL = 5  /* invariant broke; please report            */
} ultra_status;

typedef struct ultra_space ultra_space;
typedef struct ultra_order ultra_order;

const char* ultra_version(void);
const char* ultra_last_error(void);
void ultra_free_str(char* s);

/* --- spaces ------------------------------------------------------- */

/* Validates a space document.  metric = 0 checks the ultrametric laws,
 * metric = 1 the ordinary triangle inequality.  On ULTRA_OK writes a
 * summary document; on ULTRA_INVALID writes the violation report. */
ultra_status ultra_space_check(const char* space_json, int metric, char** out_json);

ultra_status ultra_space_open(const char* space_json, int metric, ultra_space** out,
                              char** invalid_json);
void ultra_space_close(ultra_space* s);
ultra_status ultra_space_to_json(const ultra_space* s, char** out_json);

/* --- generators (output is a space document) ------------------------ */

ultra_status ultra_gen_discrete(long n, char** out_json);
ultra_status ultra_gen_random(long n, uint64_t seed, char** out_json);
/* Materializes the residues mod p^precision; ULTRA_ERR_LIMIT if there are
 * more than max_points of them (the CLI default is 2048). */
ultra_status ultra_gen_padic(long p, int precision, long max_points, char** out_json);
ultra_status ultra_gen_dendrogram(const char* dendrogram_json, char** out_json);

/* --- closed balls --------------------------------------------------- */

ultra_status ultra_ball_members(const ultra_space* s, const char* center, const char* radius,
                                char** out_json);
ultra_status ultra_ball_compare(const ultra_space* s, const char* center1, const char* radius1,
                                const char* center2, const char* radius2, char** out_json);
ultra_status ultra_chain_intersect(const ultra_space* s, const char* chain_json, char** out_json);

/* --- weighted quasi-orders ------------------------------------------ */

ultra_status ultra_order_check(const char* order_json, char** out_json);
ultra_status ultra_order_open(const char* order_json, ultra_order** out, char** invalid_json);
void ultra_order_close(ultra_order* o);

/* Weight descent from the given element to a maximal one.  start is a
 * 0-based element index; recheck != 0 re-derives every claim in the
 * report through the independent definitional scan. */
ultra_status ultra_order_maximal(const ultra_order* o, long start, int recheck, char** out_json);

/* --- variational descent -------------------------------------------- */

/* weighted_json is a space document with a "phi" array.  metric selects
 * the space kind as in ultra_space_check. */
ultra_status ultra_evp_point(const char* weighted_json, const char* start, int metric, int recheck,
                             char** out_json);
ultra_status ultra_evp_verify(const char* weighted_json, const char* u, const char* v, int metric,
                              char** out_json);

/* --- fixed points ---------------------------------------------------- */

/* map_json is {"image": [...]} over the points of s. */
ultra_status ultra_fixpoint(const ultra_space* s, const char* map_json, const char* start,
                            int recheck, char** out_json);
ultra_status ultra_banach(const ultra_space* s, const char* map_json, const char* alpha,
                          const char* start, int recheck, char** out_json);

/* poly_json: {"p", "precision", "poly", "x0", "mode"}; see README. */
ultra_status ultra_hensel(const char* poly_json, int recheck, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* ULTRA_H */
