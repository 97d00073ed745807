/* divscope — metabarcoding diversity toolkit.
 *
 * C interface to the shared library. All functions return a status code;
 * DIVSCOPE_OK means success and any other value names the failure class.
 * A human-readable message for the most recent failure on the calling
 * thread is available via divscope_last_error(). Objects returned through
 * out-parameters are owned by the caller and released with the matching
 * _free function. Handles are immutable once created and may be shared
 * across threads.
 */

#ifndef DIVSCOPE_H
#define DIVSCOPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum divscope_status {
    DIVSCOPE_OK = 0,
    DIVSCOPE_ERR_IO,
    DIVSCOPE_ERR_EMPTY_INPUT,
    DIVSCOPE_ERR_INVALID_CHARACTER,
    DIVSCOPE_ERR_DUPLICATE_ID,
    DIVSCOPE_ERR_SAMPLE_TOO_LARGE,
    DIVSCOPE_ERR_EMPTY_SEQUENCE,
    DIVSCOPE_ERR_BAD_FORMAT,
    DIVSCOPE_ERR_TRUNCATED,
    DIVSCOPE_ERR_NOT_SYMMETRIC,
    DIVSCOPE_ERR_RANK_TOO_LARGE,
    DIVSCOPE_ERR_ZERO_MATRIX,
    DIVSCOPE_ERR_BAD_GAP,
    DIVSCOPE_ERR_SHAPE_MISMATCH,
    DIVSCOPE_ERR_MISSING_LABEL,
    DIVSCOPE_ERR_JOIN_ERROR,
    DIVSCOPE_ERR_BAD_AXIS,
    DIVSCOPE_ERR_INVALID_ARGUMENT,
    DIVSCOPE_ERR_INTERNAL
} divscope_status;

const char* divscope_status_name(divscope_status s);

/* Message describing the last failure on this thread ("" if none). The
 * pointer stays valid until the next failing divscope call on the same
 * thread. */
const char* divscope_last_error(void);

const char* divscope_version(void);

/* ---- read sets ---------------------------------------------------------- */

typedef struct divscope_readset divscope_readset;

divscope_status divscope_readset_load(const char* fasta_path,
                                      divscope_readset** out);
divscope_status divscope_readset_parse(const char* fasta_text,
                                       const char* source_name,
                                       divscope_readset** out);
size_t divscope_readset_size(const divscope_readset* rs);
/* Pointers remain valid for the life of the readset. */
const char* divscope_readset_id(const divscope_readset* rs, size_t i);
const char* divscope_readset_sequence(const divscope_readset* rs, size_t i);
divscope_status divscope_readset_subsample(const divscope_readset* rs, size_t k,
                                           uint64_t seed,
                                           divscope_readset** out);
divscope_status divscope_readset_write(const divscope_readset* rs,
                                       const char* fasta_path);
void divscope_readset_free(divscope_readset* rs);

/* ---- alignment ---------------------------------------------------------- */

typedef struct divscope_scoring {
    int match;    /* > 0 */
    int mismatch; /* < 0 */
    int gap;      /* < 0 */
} divscope_scoring;

/* 1 / -1 / -2 */
void divscope_scoring_init(divscope_scoring* s);

typedef struct divscope_alignment {
    int score;
    int distance;
    /* half-open spans of the locally aligned regions */
    size_t a_begin, a_end;
    size_t b_begin, b_end;
} divscope_alignment;

/* scoring == NULL selects the defaults */
divscope_status divscope_align(const char* a, const char* b,
                               const divscope_scoring* scoring,
                               divscope_alignment* out);
/* Symmetric alignment distance (operands are ordered canonically first). */
divscope_status divscope_distance(const char* a, const char* b,
                                  const divscope_scoring* scoring,
                                  int* out);

/* ---- distance matrices -------------------------------------------------- */

typedef struct divscope_matrix divscope_matrix;

divscope_status divscope_pairwise_self(const divscope_readset* rs,
                                       const divscope_scoring* scoring,
                                       unsigned threads,
                                       divscope_matrix** out);
divscope_status divscope_pairwise_cross(const divscope_readset* queries,
                                        const divscope_readset* refs,
                                        const divscope_scoring* scoring,
                                        unsigned threads,
                                        divscope_matrix** out);
size_t divscope_matrix_rows(const divscope_matrix* m);
size_t divscope_matrix_cols(const divscope_matrix* m);
int divscope_matrix_symmetric(const divscope_matrix* m);
double divscope_matrix_get(const divscope_matrix* m, size_t i, size_t j);
divscope_status divscope_matrix_write(const divscope_matrix* m,
                                      const char* dvs_path);
divscope_status divscope_matrix_read(const char* dvs_path,
                                     divscope_matrix** out);
/* Tab-separated export with an id header row; row/col ids come from the
 * given readsets (NULL selects 0-based index ids). */
divscope_status divscope_matrix_write_tsv(const divscope_matrix* m,
                                          const divscope_readset* row_ids,
                                          const divscope_readset* col_ids,
                                          const char* tsv_path);
void divscope_matrix_free(divscope_matrix* m);

/* ---- spectra and embeddings --------------------------------------------- */

typedef struct divscope_solver_options {
    size_t rank;
    size_t oversampling; /* clamped so rank + oversampling <= n for embed */
    size_t power_iters;
    uint64_t seed;
} divscope_solver_options;

/* rank 50, oversampling 10, power_iters 2, seed 0 */
void divscope_solver_options_init(divscope_solver_options* o);

/* Double-centered gram matrix of a symmetric distance matrix; the result is
 * a symmetric matrix handle. */
divscope_status divscope_gram(const divscope_matrix* dist, unsigned threads,
                              divscope_matrix** out);

/* Top eigenvalues of a symmetric matrix by randomized projection.
 * `eigenvalues` must hold at least opts->rank doubles; *count receives the
 * number written and *resid the Frobenius-gap residual estimate (either may
 * be NULL). */
divscope_status divscope_eigs(const divscope_matrix* gram,
                              const divscope_solver_options* opts,
                              unsigned threads, double* eigenvalues,
                              size_t* count, double* resid);

/* ||G||_F^2 / ||G||_S^2 of a symmetric matrix. */
divscope_status divscope_stable_rank(const divscope_matrix* gram,
                                     unsigned threads, double* out);

typedef struct divscope_embedding divscope_embedding;

/* Classical MDS coordinates from a gram matrix. Row ids are taken from
 * `ids` (NULL selects 0-based index ids). opts->oversampling is clamped to
 * n - rank. */
divscope_status divscope_embed(const divscope_matrix* gram,
                               const divscope_solver_options* opts,
                               unsigned threads, const divscope_readset* ids,
                               divscope_embedding** out);
size_t divscope_embedding_rows(const divscope_embedding* e);
size_t divscope_embedding_dims(const divscope_embedding* e);
const char* divscope_embedding_id(const divscope_embedding* e, size_t i);
double divscope_embedding_get(const divscope_embedding* e, size_t i, size_t c);
/* Retained eigenvalues (descending); returns the count, writing at most
 * `cap` values when `out` is non-NULL. Loaded embeddings report 0. */
size_t divscope_embedding_eigenvalues(const divscope_embedding* e, double* out,
                                      size_t cap);
double divscope_embedding_dropped_negative_mass(const divscope_embedding* e);
int divscope_embedding_truncated(const divscope_embedding* e);
/* meta_path may be NULL to skip the sidecar. */
divscope_status divscope_embedding_write(const divscope_embedding* e,
                                         const char* tsv_path,
                                         const char* meta_path);
divscope_status divscope_embedding_load(const char* tsv_path,
                                        divscope_embedding** out);
void divscope_embedding_free(divscope_embedding* e);

/* ---- taxonomic assignment ----------------------------------------------- */

/* floor((1 - gap) * min(len_q, len_r)); gap must lie in (0, 1]. */
divscope_status divscope_gap_threshold(double gap, size_t len_q, size_t len_r,
                                       long* out);

typedef struct divscope_assignments divscope_assignments;

/* Classify queries against labeled references. `cross` may be NULL, in
 * which case the query x reference distances are computed with the default
 * scoring using `threads`. */
divscope_status divscope_classify(const divscope_readset* queries,
                                  const divscope_readset* refs,
                                  const char* labels_tsv_path,
                                  const divscope_matrix* cross, double gap,
                                  unsigned threads,
                                  divscope_assignments** out);
size_t divscope_assignments_size(const divscope_assignments* a);
const char* divscope_assignments_read_id(const divscope_assignments* a,
                                         size_t i);
/* "Assigned", "Ambiguous" or "Unknown" */
const char* divscope_assignments_status(const divscope_assignments* a,
                                        size_t i);
/* species name, or "" when not assigned */
const char* divscope_assignments_species(const divscope_assignments* a,
                                         size_t i);
size_t divscope_assignments_support(const divscope_assignments* a, size_t i);
divscope_status divscope_assignments_write(const divscope_assignments* a,
                                           const char* tsv_path);
divscope_status divscope_assignments_load(const char* tsv_path,
                                          divscope_assignments** out);
void divscope_assignments_free(divscope_assignments* a);

/* ---- density exports ----------------------------------------------------- */

typedef struct divscope_hexbin divscope_hexbin;

/* axis_i / axis_j are 0-based embedding dimensions; radius <= 0 selects the
 * default (largest axis range / 50). */
divscope_status divscope_hexbin_compute(const divscope_embedding* e,
                                        size_t axis_i, size_t axis_j,
                                        double radius, unsigned threads,
                                        divscope_hexbin** out);
size_t divscope_hexbin_size(const divscope_hexbin* g);
divscope_status divscope_hexbin_bin(const divscope_hexbin* g, size_t i,
                                    long* q, long* r, double* center_x,
                                    double* center_y, size_t* count);
divscope_status divscope_hexbin_write(const divscope_hexbin* g,
                                      const char* tsv_path);
void divscope_hexbin_free(divscope_hexbin* g);

/* First-k-dimensions table for parallel-coordinates plots. `labels` may be
 * NULL (empty label column); `species_filter` may be NULL or "" to keep all
 * rows. */
divscope_status divscope_pcoords_write(const divscope_embedding* e, size_t k,
                                       const divscope_assignments* labels,
                                       const char* species_filter,
                                       const char* tsv_path);

/* ---- pipeline ------------------------------------------------------------ */

typedef struct divscope_pipeline_config {
    const char* input_fasta;
    const char* refs_fasta; /* NULL or "" when unsupervised */
    const char* labels_tsv;
    const char* outdir;
    size_t rank;
    double gap;
    uint64_t seed;
    unsigned threads;
    size_t oversampling;
    size_t power_iters;
    size_t hex_axis_i; /* 0-based embedding dimensions */
    size_t hex_axis_j;
    size_t pcoords_k;
} divscope_pipeline_config;

/* rank 50, gap 0.97, seed 0, threads 1, oversampling 10, power_iters 2,
 * hex axes (0, 1), pcoords_k 6, paths NULL */
void divscope_pipeline_config_init(divscope_pipeline_config* c);

/* Returns the process exit code (0 ok, 2 config error, 3+ stage failure).
 * On failure the message is placed in error_buf (if given) and in
 * divscope_last_error(). */
int divscope_run_pipeline(const divscope_pipeline_config* c, char* error_buf,
                          size_t error_cap);

#ifdef __cplusplus
}
#endif

#endif /* DIVSCOPE_H */
