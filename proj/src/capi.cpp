#include "divscope.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <string>

#include "align.hpp"
#include "assign.hpp"
#include "density.hpp"
#include "distmat.hpp"
#include "error.hpp"
#include "mds.hpp"
#include "pipeline.hpp"
#include "rsvd.hpp"
#include "seqio.hpp"

using namespace divscope;

struct divscope_readset {
    ReadSet rs;
};
struct divscope_matrix {
    DistanceMatrix m;
};
struct divscope_embedding {
    std::vector<std::string> ids;
    Embedding emb;
};
struct divscope_assignments {
    std::vector<AssignmentResult> rows;
};
struct divscope_hexbin {
    HexBinGrid grid;
};

namespace {

thread_local std::string g_last_error;

divscope_status map_errc(errc c) {
    switch (c) {
        case errc::ok: return DIVSCOPE_OK;
        case errc::io_error: return DIVSCOPE_ERR_IO;
        case errc::empty_input: return DIVSCOPE_ERR_EMPTY_INPUT;
        case errc::invalid_character: return DIVSCOPE_ERR_INVALID_CHARACTER;
        case errc::duplicate_id: return DIVSCOPE_ERR_DUPLICATE_ID;
        case errc::sample_too_large: return DIVSCOPE_ERR_SAMPLE_TOO_LARGE;
        case errc::empty_sequence: return DIVSCOPE_ERR_EMPTY_SEQUENCE;
        case errc::bad_format: return DIVSCOPE_ERR_BAD_FORMAT;
        case errc::truncated: return DIVSCOPE_ERR_TRUNCATED;
        case errc::not_symmetric: return DIVSCOPE_ERR_NOT_SYMMETRIC;
        case errc::rank_too_large: return DIVSCOPE_ERR_RANK_TOO_LARGE;
        case errc::zero_matrix: return DIVSCOPE_ERR_ZERO_MATRIX;
        case errc::bad_gap: return DIVSCOPE_ERR_BAD_GAP;
        case errc::shape_mismatch: return DIVSCOPE_ERR_SHAPE_MISMATCH;
        case errc::missing_label: return DIVSCOPE_ERR_MISSING_LABEL;
        case errc::join_error: return DIVSCOPE_ERR_JOIN_ERROR;
        case errc::bad_axis: return DIVSCOPE_ERR_BAD_AXIS;
        case errc::invalid_argument: return DIVSCOPE_ERR_INVALID_ARGUMENT;
        case errc::internal: return DIVSCOPE_ERR_INTERNAL;
    }
    return DIVSCOPE_ERR_INTERNAL;
}

template <typename F>
divscope_status wrap(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return DIVSCOPE_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DIVSCOPE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DIVSCOPE_ERR_INTERNAL;
    }
}

divscope_status fail_invalid(const char* msg) {
    g_last_error = msg;
    return DIVSCOPE_ERR_INVALID_ARGUMENT;
}

ScoringScheme to_scheme(const divscope_scoring* s) {
    if (!s) return ScoringScheme{};
    return ScoringScheme{s->match, s->mismatch, s->gap};
}

SolverOptions to_options(const divscope_solver_options* o) {
    SolverOptions opts;
    if (o) {
        opts.rank = o->rank;
        opts.oversampling = o->oversampling;
        opts.power_iters = o->power_iters;
        opts.seed = o->seed;
    }
    return opts;
}

std::vector<std::string> index_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

}  // namespace

extern "C" {

const char* divscope_status_name(divscope_status s) {
    switch (s) {
        case DIVSCOPE_OK: return "ok";
        case DIVSCOPE_ERR_IO: return "io_error";
        case DIVSCOPE_ERR_EMPTY_INPUT: return "empty_input";
        case DIVSCOPE_ERR_INVALID_CHARACTER: return "invalid_character";
        case DIVSCOPE_ERR_DUPLICATE_ID: return "duplicate_id";
        case DIVSCOPE_ERR_SAMPLE_TOO_LARGE: return "sample_too_large";
        case DIVSCOPE_ERR_EMPTY_SEQUENCE: return "empty_sequence";
        case DIVSCOPE_ERR_BAD_FORMAT: return "bad_format";
        case DIVSCOPE_ERR_TRUNCATED: return "truncated";
        case DIVSCOPE_ERR_NOT_SYMMETRIC: return "not_symmetric";
        case DIVSCOPE_ERR_RANK_TOO_LARGE: return "rank_too_large";
        case DIVSCOPE_ERR_ZERO_MATRIX: return "zero_matrix";
        case DIVSCOPE_ERR_BAD_GAP: return "bad_gap";
        case DIVSCOPE_ERR_SHAPE_MISMATCH: return "shape_mismatch";
        case DIVSCOPE_ERR_MISSING_LABEL: return "missing_label";
        case DIVSCOPE_ERR_JOIN_ERROR: return "join_error";
        case DIVSCOPE_ERR_BAD_AXIS: return "bad_axis";
        case DIVSCOPE_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case DIVSCOPE_ERR_INTERNAL: return "internal";
    }
    return "internal";
}

const char* divscope_last_error(void) { return g_last_error.c_str(); }

const char* divscope_version(void) { return "1.0.0"; }

/* ---- read sets ---------------------------------------------------------- */

divscope_status divscope_readset_load(const char* fasta_path,
                                      divscope_readset** out) {
    if (!fasta_path || !out) return fail_invalid("null argument");
    return wrap([&] { *out = new divscope_readset{parse_fasta_file(fasta_path)}; });
}

divscope_status divscope_readset_parse(const char* fasta_text,
                                       const char* source_name,
                                       divscope_readset** out) {
    if (!fasta_text || !out) return fail_invalid("null argument");
    return wrap([&] {
        *out = new divscope_readset{
            parse_fasta_string(fasta_text, source_name ? source_name : "<memory>")};
    });
}

size_t divscope_readset_size(const divscope_readset* rs) {
    return rs ? rs->rs.size() : 0;
}

const char* divscope_readset_id(const divscope_readset* rs, size_t i) {
    if (!rs || i >= rs->rs.size()) return nullptr;
    return rs->rs[i].id.c_str();
}

const char* divscope_readset_sequence(const divscope_readset* rs, size_t i) {
    if (!rs || i >= rs->rs.size()) return nullptr;
    return rs->rs[i].sequence.c_str();
}

divscope_status divscope_readset_subsample(const divscope_readset* rs, size_t k,
                                           uint64_t seed,
                                           divscope_readset** out) {
    if (!rs || !out) return fail_invalid("null argument");
    return wrap([&] { *out = new divscope_readset{subsample(rs->rs, k, seed)}; });
}

divscope_status divscope_readset_write(const divscope_readset* rs,
                                       const char* fasta_path) {
    if (!rs || !fasta_path) return fail_invalid("null argument");
    return wrap([&] { write_fasta_file(rs->rs, fasta_path); });
}

void divscope_readset_free(divscope_readset* rs) { delete rs; }

/* ---- alignment ---------------------------------------------------------- */

void divscope_scoring_init(divscope_scoring* s) {
    if (!s) return;
    const ScoringScheme d;
    s->match = d.match;
    s->mismatch = d.mismatch;
    s->gap = d.gap;
}

divscope_status divscope_align(const char* a, const char* b,
                               const divscope_scoring* scoring,
                               divscope_alignment* out) {
    if (!a || !b || !out) return fail_invalid("null argument");
    return wrap([&] {
        const AlignmentResult r = sw_align(a, b, to_scheme(scoring));
        out->score = r.score;
        out->distance = r.distance;
        out->a_begin = r.a_begin;
        out->a_end = r.a_end;
        out->b_begin = r.b_begin;
        out->b_end = r.b_end;
    });
}

divscope_status divscope_distance(const char* a, const char* b,
                                  const divscope_scoring* scoring, int* out) {
    if (!a || !b || !out) return fail_invalid("null argument");
    return wrap([&] { *out = sw_distance(a, b, to_scheme(scoring)); });
}

/* ---- distance matrices -------------------------------------------------- */

divscope_status divscope_pairwise_self(const divscope_readset* rs,
                                       const divscope_scoring* scoring,
                                       unsigned threads,
                                       divscope_matrix** out) {
    if (!rs || !out) return fail_invalid("null argument");
    return wrap([&] {
        *out = new divscope_matrix{pairwise_self(rs->rs, to_scheme(scoring), threads)};
    });
}

divscope_status divscope_pairwise_cross(const divscope_readset* queries,
                                        const divscope_readset* refs,
                                        const divscope_scoring* scoring,
                                        unsigned threads,
                                        divscope_matrix** out) {
    if (!queries || !refs || !out) return fail_invalid("null argument");
    return wrap([&] {
        *out = new divscope_matrix{
            pairwise_cross(queries->rs, refs->rs, to_scheme(scoring), threads)};
    });
}

size_t divscope_matrix_rows(const divscope_matrix* m) { return m ? m->m.rows : 0; }
size_t divscope_matrix_cols(const divscope_matrix* m) { return m ? m->m.cols : 0; }
int divscope_matrix_symmetric(const divscope_matrix* m) {
    return m && m->m.symmetric ? 1 : 0;
}

double divscope_matrix_get(const divscope_matrix* m, size_t i, size_t j) {
    if (!m || i >= m->m.rows || j >= m->m.cols) return 0.0;
    return m->m.at(i, j);
}

divscope_status divscope_matrix_write(const divscope_matrix* m,
                                      const char* dvs_path) {
    if (!m || !dvs_path) return fail_invalid("null argument");
    return wrap([&] { write_matrix(m->m, dvs_path); });
}

divscope_status divscope_matrix_read(const char* dvs_path,
                                     divscope_matrix** out) {
    if (!dvs_path || !out) return fail_invalid("null argument");
    return wrap([&] { *out = new divscope_matrix{read_matrix(dvs_path)}; });
}

divscope_status divscope_matrix_write_tsv(const divscope_matrix* m,
                                          const divscope_readset* row_ids,
                                          const divscope_readset* col_ids,
                                          const char* tsv_path) {
    if (!m || !tsv_path) return fail_invalid("null argument");
    return wrap([&] {
        const std::vector<std::string> rows =
            row_ids ? row_ids->rs.ids() : index_ids(m->m.rows);
        const std::vector<std::string> cols =
            col_ids ? col_ids->rs.ids() : index_ids(m->m.cols);
        write_matrix_tsv(m->m, rows, cols, tsv_path);
    });
}

void divscope_matrix_free(divscope_matrix* m) { delete m; }

/* ---- spectra and embeddings --------------------------------------------- */

void divscope_solver_options_init(divscope_solver_options* o) {
    if (!o) return;
    o->rank = 50;
    o->oversampling = 10;
    o->power_iters = 2;
    o->seed = 0;
}

divscope_status divscope_gram(const divscope_matrix* dist, unsigned threads,
                              divscope_matrix** out) {
    if (!dist || !out) return fail_invalid("null argument");
    return wrap([&] {
        GramMatrix g = gram_from_distances(dist->m, threads);
        DistanceMatrix m;
        m.rows = m.cols = g.n;
        m.symmetric = true;
        m.values = std::move(g.values);
        *out = new divscope_matrix{std::move(m)};
    });
}

divscope_status divscope_eigs(const divscope_matrix* gram,
                              const divscope_solver_options* opts,
                              unsigned threads, double* eigenvalues,
                              size_t* count, double* resid) {
    if (!gram || !opts || !eigenvalues) return fail_invalid("null argument");
    return wrap([&] {
        if (gram->m.rows != gram->m.cols)
            throw Error(errc::not_symmetric, "matrix is not square");
        const Spectrum s =
            eigs_sym(SymView{gram->m.values.data(), gram->m.rows},
                     to_options(opts), threads);
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            eigenvalues[i] = s.eigenvalues[i];
        if (count) *count = s.eigenvalues.size();
        if (resid) *resid = s.resid;
    });
}

divscope_status divscope_stable_rank(const divscope_matrix* gram,
                                     unsigned threads, double* out) {
    if (!gram || !out) return fail_invalid("null argument");
    return wrap([&] {
        if (gram->m.rows != gram->m.cols)
            throw Error(errc::not_symmetric, "matrix is not square");
        *out = stable_rank(SymView{gram->m.values.data(), gram->m.rows}, threads);
    });
}

divscope_status divscope_embed(const divscope_matrix* gram,
                               const divscope_solver_options* opts,
                               unsigned threads, const divscope_readset* ids,
                               divscope_embedding** out) {
    if (!gram || !opts || !out) return fail_invalid("null argument");
    return wrap([&] {
        if (gram->m.rows != gram->m.cols)
            throw Error(errc::not_symmetric, "matrix is not square");
        if (ids && ids->rs.size() != gram->m.rows)
            throw Error(errc::shape_mismatch, "id count does not match matrix");
        Embedding e = embed(SymView{gram->m.values.data(), gram->m.rows},
                            opts->rank, to_options(opts), threads);
        auto* handle = new divscope_embedding;
        handle->ids = ids ? ids->rs.ids() : index_ids(e.n);
        handle->emb = std::move(e);
        *out = handle;
    });
}

size_t divscope_embedding_rows(const divscope_embedding* e) {
    return e ? e->emb.n : 0;
}
size_t divscope_embedding_dims(const divscope_embedding* e) {
    return e ? e->emb.r : 0;
}

const char* divscope_embedding_id(const divscope_embedding* e, size_t i) {
    if (!e || i >= e->ids.size()) return nullptr;
    return e->ids[i].c_str();
}

double divscope_embedding_get(const divscope_embedding* e, size_t i, size_t c) {
    if (!e || i >= e->emb.n || c >= e->emb.r) return 0.0;
    return e->emb.coords[i * e->emb.r + c];
}

size_t divscope_embedding_eigenvalues(const divscope_embedding* e, double* out,
                                      size_t cap) {
    if (!e) return 0;
    if (out)
        for (size_t i = 0; i < e->emb.eigenvalues.size() && i < cap; ++i)
            out[i] = e->emb.eigenvalues[i];
    return e->emb.eigenvalues.size();
}

double divscope_embedding_dropped_negative_mass(const divscope_embedding* e) {
    return e ? e->emb.dropped_negative_mass : 0.0;
}

int divscope_embedding_truncated(const divscope_embedding* e) {
    return e && e->emb.truncated ? 1 : 0;
}

divscope_status divscope_embedding_write(const divscope_embedding* e,
                                         const char* tsv_path,
                                         const char* meta_path) {
    if (!e || !tsv_path) return fail_invalid("null argument");
    return wrap([&] {
        write_embedding_tsv(e->emb, e->ids, tsv_path);
        if (meta_path) write_embedding_meta(e->emb, meta_path);
    });
}

divscope_status divscope_embedding_load(const char* tsv_path,
                                        divscope_embedding** out) {
    if (!tsv_path || !out) return fail_invalid("null argument");
    return wrap([&] {
        EmbeddingTable t = load_embedding_tsv(tsv_path);
        auto* handle = new divscope_embedding;
        handle->emb.n = t.size();
        handle->emb.r = t.dims;
        handle->emb.coords = std::move(t.coords);
        handle->ids = std::move(t.ids);
        *out = handle;
    });
}

void divscope_embedding_free(divscope_embedding* e) { delete e; }

/* ---- taxonomic assignment ----------------------------------------------- */

divscope_status divscope_gap_threshold(double gap, size_t len_q, size_t len_r,
                                       long* out) {
    if (!out) return fail_invalid("null argument");
    return wrap([&] { *out = gap_threshold(gap, len_q, len_r); });
}

divscope_status divscope_classify(const divscope_readset* queries,
                                  const divscope_readset* refs,
                                  const char* labels_tsv_path,
                                  const divscope_matrix* cross, double gap,
                                  unsigned threads,
                                  divscope_assignments** out) {
    if (!queries || !refs || !labels_tsv_path || !out)
        return fail_invalid("null argument");
    return wrap([&] {
        ReferenceDB db =
            make_reference_db(refs->rs, read_labels_tsv(labels_tsv_path));
        DistanceMatrix computed;
        const DistanceMatrix* use = cross ? &cross->m : nullptr;
        if (!use) {
            computed = pairwise_cross(queries->rs, db.reads, ScoringScheme{}, threads);
            use = &computed;
        }
        *out = new divscope_assignments{classify(queries->rs, db, *use, gap)};
    });
}

size_t divscope_assignments_size(const divscope_assignments* a) {
    return a ? a->rows.size() : 0;
}

const char* divscope_assignments_read_id(const divscope_assignments* a,
                                         size_t i) {
    if (!a || i >= a->rows.size()) return nullptr;
    return a->rows[i].read_id.c_str();
}

const char* divscope_assignments_status(const divscope_assignments* a,
                                        size_t i) {
    if (!a || i >= a->rows.size()) return nullptr;
    return to_string(a->rows[i].status);
}

const char* divscope_assignments_species(const divscope_assignments* a,
                                         size_t i) {
    if (!a || i >= a->rows.size()) return nullptr;
    return a->rows[i].species.c_str();
}

size_t divscope_assignments_support(const divscope_assignments* a, size_t i) {
    if (!a || i >= a->rows.size()) return 0;
    return a->rows[i].support;
}

divscope_status divscope_assignments_write(const divscope_assignments* a,
                                           const char* tsv_path) {
    if (!a || !tsv_path) return fail_invalid("null argument");
    return wrap([&] { write_assignments_tsv(a->rows, tsv_path); });
}

divscope_status divscope_assignments_load(const char* tsv_path,
                                          divscope_assignments** out) {
    if (!tsv_path || !out) return fail_invalid("null argument");
    return wrap([&] {
        *out = new divscope_assignments{read_assignments_tsv(tsv_path)};
    });
}

void divscope_assignments_free(divscope_assignments* a) { delete a; }

/* ---- density exports ----------------------------------------------------- */

namespace {

EmbeddingTable table_of(const divscope_embedding* e) {
    EmbeddingTable t;
    t.ids = e->ids;
    t.dims = e->emb.r;
    t.coords = e->emb.coords;
    return t;
}

}  // namespace

divscope_status divscope_hexbin_compute(const divscope_embedding* e,
                                        size_t axis_i, size_t axis_j,
                                        double radius, unsigned threads,
                                        divscope_hexbin** out) {
    if (!e || !out) return fail_invalid("null argument");
    return wrap([&] {
        *out = new divscope_hexbin{
            hexbin(table_of(e), axis_i, axis_j, radius, threads)};
    });
}

size_t divscope_hexbin_size(const divscope_hexbin* g) {
    return g ? g->grid.bins.size() : 0;
}

divscope_status divscope_hexbin_bin(const divscope_hexbin* g, size_t i,
                                    long* q, long* r, double* center_x,
                                    double* center_y, size_t* count) {
    if (!g) return fail_invalid("null argument");
    if (i >= g->grid.bins.size()) return fail_invalid("bin index out of range");
    const HexBin& b = g->grid.bins[i];
    if (q) *q = b.q;
    if (r) *r = b.r;
    if (center_x) *center_x = b.center_x;
    if (center_y) *center_y = b.center_y;
    if (count) *count = b.count;
    return DIVSCOPE_OK;
}

divscope_status divscope_hexbin_write(const divscope_hexbin* g,
                                      const char* tsv_path) {
    if (!g || !tsv_path) return fail_invalid("null argument");
    return wrap([&] { write_hexbin_tsv(g->grid, tsv_path); });
}

void divscope_hexbin_free(divscope_hexbin* g) { delete g; }

divscope_status divscope_pcoords_write(const divscope_embedding* e, size_t k,
                                       const divscope_assignments* labels,
                                       const char* species_filter,
                                       const char* tsv_path) {
    if (!e || !tsv_path) return fail_invalid("null argument");
    return wrap([&] {
        std::vector<std::string> label_col;
        if (labels) label_col = color_table(e->ids, labels->rows);
        const ParallelCoordsTable t =
            parallel_coords(table_of(e), k, label_col,
                            species_filter ? species_filter : "");
        write_pcoords_tsv(t, tsv_path);
    });
}

/* ---- pipeline ------------------------------------------------------------ */

void divscope_pipeline_config_init(divscope_pipeline_config* c) {
    if (!c) return;
    std::memset(c, 0, sizeof(*c));
    const PipelineConfig d;
    c->rank = d.rank;
    c->gap = d.gap;
    c->seed = d.seed;
    c->threads = d.threads;
    c->oversampling = d.oversampling;
    c->power_iters = d.power_iters;
    c->hex_axis_i = d.hex_axis_i;
    c->hex_axis_j = d.hex_axis_j;
    c->pcoords_k = d.pcoords_k;
}

int divscope_run_pipeline(const divscope_pipeline_config* c, char* error_buf,
                          size_t error_cap) {
    if (!c) {
        if (error_buf && error_cap) std::snprintf(error_buf, error_cap, "null config");
        return kExitConfig;
    }
    PipelineConfig cfg;
    cfg.input_fasta = c->input_fasta ? c->input_fasta : "";
    cfg.refs_fasta = c->refs_fasta ? c->refs_fasta : "";
    cfg.labels_tsv = c->labels_tsv ? c->labels_tsv : "";
    cfg.outdir = c->outdir ? c->outdir : "";
    cfg.rank = c->rank;
    cfg.gap = c->gap;
    cfg.seed = c->seed;
    cfg.threads = c->threads;
    cfg.oversampling = c->oversampling;
    cfg.power_iters = c->power_iters;
    cfg.hex_axis_i = c->hex_axis_i;
    cfg.hex_axis_j = c->hex_axis_j;
    cfg.pcoords_k = c->pcoords_k;

    const PipelineResult res = run_pipeline(cfg);
    if (res.exit_code != kExitOk) {
        g_last_error = res.error;
        if (error_buf && error_cap)
            std::snprintf(error_buf, error_cap, "%s", res.error.c_str());
    } else {
        g_last_error.clear();
        if (error_buf && error_cap) error_buf[0] = '\0';
    }
    return res.exit_code;
}

}  // extern "C"
