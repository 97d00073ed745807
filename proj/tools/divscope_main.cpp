// divscope command line front-end. Everything goes through the public C
// API in divscope.h; no core headers are included here.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "divscope.h"

namespace {

struct readset_deleter {
    void operator()(divscope_readset* p) const { divscope_readset_free(p); }
};
struct matrix_deleter {
    void operator()(divscope_matrix* p) const { divscope_matrix_free(p); }
};
struct embedding_deleter {
    void operator()(divscope_embedding* p) const { divscope_embedding_free(p); }
};
struct assignments_deleter {
    void operator()(divscope_assignments* p) const { divscope_assignments_free(p); }
};
struct hexbin_deleter {
    void operator()(divscope_hexbin* p) const { divscope_hexbin_free(p); }
};

using readset_ptr = std::unique_ptr<divscope_readset, readset_deleter>;
using matrix_ptr = std::unique_ptr<divscope_matrix, matrix_deleter>;
using embedding_ptr = std::unique_ptr<divscope_embedding, embedding_deleter>;
using assignments_ptr = std::unique_ptr<divscope_assignments, assignments_deleter>;
using hexbin_ptr = std::unique_ptr<divscope_hexbin, hexbin_deleter>;

// exits with 1 on failure — subcommand-level errors are not config errors
void check(divscope_status s, const char* what) {
    if (s == DIVSCOPE_OK) return;
    std::fprintf(stderr, "divscope: %s: %s\n", what, divscope_last_error());
    std::exit(1);
}

readset_ptr load_reads(const std::string& path, const char* what) {
    divscope_readset* rs = nullptr;
    check(divscope_readset_load(path.c_str(), &rs), what);
    return readset_ptr(rs);
}

matrix_ptr load_matrix(const std::string& path, const char* what) {
    divscope_matrix* m = nullptr;
    check(divscope_matrix_read(path.c_str(), &m), what);
    return matrix_ptr(m);
}

embedding_ptr load_embedding(const std::string& path, const char* what) {
    divscope_embedding* e = nullptr;
    check(divscope_embedding_load(path.c_str(), &e), what);
    return embedding_ptr(e);
}

bool parse_axes(const std::string& text, size_t& axis_i, size_t& axis_j) {
    unsigned long a = 0, b = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lu,%lu%c", &a, &b, &extra) != 2) return false;
    if (a < 1 || b < 1) return false;  // 1-based on the command line
    axis_i = a - 1;
    axis_j = b - 1;
    return true;
}

matrix_ptr gram_of(const divscope_matrix* dist, unsigned threads) {
    divscope_matrix* g = nullptr;
    check(divscope_gram(dist, threads, &g), "gram");
    return matrix_ptr(g);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metabarcoding diversity pipeline"};
    app.set_version_flag("--version", divscope_version());
    app.require_subcommand(1);

    // --- subsample ---
    std::string ss_in, ss_out;
    size_t ss_k = 0;
    uint64_t ss_seed = 0;
    auto* ss = app.add_subcommand("subsample", "uniform subsample of a FASTA file");
    ss->add_option("--in", ss_in, "input FASTA")->required();
    ss->add_option("--k", ss_k, "sample size")->required();
    ss->add_option("--seed", ss_seed, "RNG seed")->default_val(0);
    ss->add_option("--out", ss_out, "output FASTA")->required();

    // --- align ---
    std::string al_a, al_b;
    divscope_scoring al_scoring;
    divscope_scoring_init(&al_scoring);
    auto* al = app.add_subcommand("align", "align two sequences (debug)");
    al->add_option("--a", al_a, "first sequence")->required();
    al->add_option("--b", al_b, "second sequence")->required();
    al->add_option("--match", al_scoring.match, "match score")->default_val(1);
    al->add_option("--mismatch", al_scoring.mismatch, "mismatch score")
        ->default_val(-1);
    al->add_option("--gap", al_scoring.gap, "gap score")->default_val(-2);

    // --- dist ---
    std::string di_in, di_ref, di_out, di_tsv;
    unsigned di_threads = 1;
    auto* di = app.add_subcommand("dist", "pairwise alignment distance matrix");
    di->add_option("--in", di_in, "input FASTA")->required();
    di->add_option("--ref", di_ref, "reference FASTA (cross distances)");
    di->add_option("--out", di_out, "output .dvs matrix")->required();
    di->add_option("--threads", di_threads, "worker threads")->default_val(1);
    di->add_option("--tsv", di_tsv, "also export a TSV with id headers");

    // --- mds ---
    std::string md_dist, md_out, md_ids;
    size_t md_rank = 50;
    divscope_solver_options md_opts;
    divscope_solver_options_init(&md_opts);
    unsigned md_threads = 1;
    auto* md = app.add_subcommand("mds", "classical MDS embedding of a distance matrix");
    md->add_option("--dist", md_dist, "input .dvs distance matrix")->required();
    md->add_option("--rank", md_rank, "embedding rank")->default_val(50);
    md->add_option("--seed", md_opts.seed, "RNG seed")->default_val(0);
    md->add_option("--oversample", md_opts.oversampling, "sketch oversampling")
        ->default_val(10);
    md->add_option("--power-iters", md_opts.power_iters, "power iterations")
        ->default_val(2);
    md->add_option("--threads", md_threads, "worker threads")->default_val(1);
    md->add_option("--ids", md_ids,
                   "FASTA whose read order names the matrix rows "
                   "(defaults to 0-based indices)");
    md->add_option("--out", md_out, "output embedding TSV (sidecar: <out>.meta)")
        ->required();

    // --- spectrum ---
    std::string sp_dist;
    size_t sp_rank = 10;
    divscope_solver_options sp_opts;
    divscope_solver_options_init(&sp_opts);
    unsigned sp_threads = 1;
    auto* sp = app.add_subcommand(
        "spectrum", "top eigenvalues and stable rank of the gram matrix");
    sp->add_option("--dist", sp_dist, "input .dvs distance matrix")->required();
    sp->add_option("--rank", sp_rank, "eigenvalues to compute")->default_val(10);
    sp->add_option("--seed", sp_opts.seed, "RNG seed")->default_val(0);
    sp->add_option("--oversample", sp_opts.oversampling, "sketch oversampling")
        ->default_val(10);
    sp->add_option("--power-iters", sp_opts.power_iters, "power iterations")
        ->default_val(2);
    sp->add_option("--threads", sp_threads, "worker threads")->default_val(1);

    // --- assign ---
    std::string as_queries, as_refs, as_labels, as_cross, as_out;
    double as_gap = 0.97;
    unsigned as_threads = 1;
    auto* as = app.add_subcommand("assign", "homology-gap taxonomic assignment");
    as->add_option("--queries", as_queries, "query FASTA")->required();
    as->add_option("--refs", as_refs, "reference FASTA")->required();
    as->add_option("--labels", as_labels, "reference labels TSV")->required();
    as->add_option("--cross", as_cross,
                   "precomputed query x reference .dvs (computed when absent)");
    as->add_option("--gap", as_gap, "homology gap in (0,1]")->default_val(0.97);
    as->add_option("--threads", as_threads, "worker threads")->default_val(1);
    as->add_option("--out", as_out, "output assignments TSV")->required();

    // --- hexbin ---
    std::string hx_embed, hx_axes = "1,2", hx_out;
    double hx_radius = 0.0;
    unsigned hx_threads = 1;
    auto* hx = app.add_subcommand("hexbin", "hexagonal density grid of an embedding");
    hx->add_option("--embed", hx_embed, "embedding TSV")->required();
    hx->add_option("--axes", hx_axes, "1-based dimension pair, e.g. 1,2")
        ->default_val("1,2");
    hx->add_option("--radius", hx_radius,
                   "hex circumradius (default: max axis range / 50)");
    hx->add_option("--threads", hx_threads, "worker threads")->default_val(1);
    hx->add_option("--out", hx_out, "output TSV")->required();

    // --- pcoords ---
    std::string pc_embed, pc_labels, pc_filter, pc_out;
    size_t pc_k = 6;
    auto* pc = app.add_subcommand("pcoords", "parallel-coordinates table");
    pc->add_option("--embed", pc_embed, "embedding TSV")->required();
    pc->add_option("--k", pc_k, "leading dimensions to keep")->default_val(6);
    pc->add_option("--labels", pc_labels, "assignments TSV for the label column");
    pc->add_option("--filter", pc_filter, "keep only rows with this label");
    pc->add_option("--out", pc_out, "output TSV")->required();

    // --- pipeline ---
    divscope_pipeline_config pl;
    divscope_pipeline_config_init(&pl);
    std::string pl_in, pl_refs, pl_labels, pl_outdir, pl_axes = "1,2";
    auto* pipe = app.add_subcommand("pipeline", "run the full pipeline");
    pipe->add_option("--in", pl_in, "input FASTA")->required();
    pipe->add_option("--refs", pl_refs, "reference FASTA (enables assignment)");
    pipe->add_option("--labels", pl_labels, "reference labels TSV");
    pipe->add_option("--rank", pl.rank, "embedding rank")->default_val(50);
    pipe->add_option("--gap", pl.gap, "homology gap")->default_val(0.97);
    pipe->add_option("--seed", pl.seed, "RNG seed")->default_val(0);
    pipe->add_option("--threads", pl.threads, "worker threads")->default_val(1);
    pipe->add_option("--oversample", pl.oversampling, "sketch oversampling")
        ->default_val(10);
    pipe->add_option("--power-iters", pl.power_iters, "power iterations")
        ->default_val(2);
    pipe->add_option("--axes", pl_axes, "hexbin dimension pair")->default_val("1,2");
    pipe->add_option("--k", pl.pcoords_k, "parallel-coordinates dimensions")
        ->default_val(6);
    pipe->add_option("--outdir", pl_outdir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad usage is a config error
    }

    if (ss->parsed()) {
        readset_ptr rs = load_reads(ss_in, "subsample");
        divscope_readset* sampled = nullptr;
        check(divscope_readset_subsample(rs.get(), ss_k, ss_seed, &sampled),
              "subsample");
        readset_ptr keep(sampled);
        check(divscope_readset_write(sampled, ss_out.c_str()), "subsample");
        return 0;
    }

    if (al->parsed()) {
        divscope_alignment result;
        check(divscope_align(al_a.c_str(), al_b.c_str(), &al_scoring, &result),
              "align");
        std::printf("score\t%d\n", result.score);
        std::printf("distance\t%d\n", result.distance);
        std::printf("a_span\t%zu\t%zu\n", result.a_begin, result.a_end);
        std::printf("b_span\t%zu\t%zu\n", result.b_begin, result.b_end);
        return 0;
    }

    if (di->parsed()) {
        readset_ptr reads = load_reads(di_in, "dist");
        readset_ptr refs;
        divscope_matrix* m = nullptr;
        if (di_ref.empty()) {
            check(divscope_pairwise_self(reads.get(), nullptr, di_threads, &m),
                  "dist");
        } else {
            refs = load_reads(di_ref, "dist");
            check(divscope_pairwise_cross(reads.get(), refs.get(), nullptr,
                                          di_threads, &m),
                  "dist");
        }
        matrix_ptr keep(m);
        check(divscope_matrix_write(m, di_out.c_str()), "dist");
        if (!di_tsv.empty())
            check(divscope_matrix_write_tsv(
                      m, reads.get(), refs ? refs.get() : reads.get(),
                      di_tsv.c_str()),
                  "dist");
        return 0;
    }

    if (md->parsed()) {
        matrix_ptr dist = load_matrix(md_dist, "mds");
        matrix_ptr gram = gram_of(dist.get(), md_threads);
        const size_t n = divscope_matrix_rows(gram.get());
        md_opts.rank = md_rank < n ? md_rank : n;
        readset_ptr ids;
        if (!md_ids.empty()) ids = load_reads(md_ids, "mds");
        divscope_embedding* e = nullptr;
        check(divscope_embed(gram.get(), &md_opts, md_threads,
                             ids ? ids.get() : nullptr, &e),
              "mds");
        embedding_ptr keep(e);
        const std::string meta = md_out + ".meta";
        check(divscope_embedding_write(e, md_out.c_str(), meta.c_str()), "mds");
        return 0;
    }

    if (sp->parsed()) {
        matrix_ptr dist = load_matrix(sp_dist, "spectrum");
        matrix_ptr gram = gram_of(dist.get(), sp_threads);
        const size_t n = divscope_matrix_rows(gram.get());
        sp_opts.rank = sp_rank < n ? sp_rank : n;
        if (sp_opts.oversampling > n - sp_opts.rank)
            sp_opts.oversampling = n - sp_opts.rank;
        std::vector<double> eigenvalues(sp_opts.rank);
        size_t count = 0;
        double resid = 0.0;
        check(divscope_eigs(gram.get(), &sp_opts, sp_threads, eigenvalues.data(),
                            &count, &resid),
              "spectrum");
        double st = 0.0;
        check(divscope_stable_rank(gram.get(), sp_threads, &st), "spectrum");
        for (size_t i = 0; i < count; ++i)
            std::printf("eigenvalue\t%zu\t%.17g\n", i + 1, eigenvalues[i]);
        std::printf("resid\t%.17g\n", resid);
        std::printf("stable_rank\t%.17g\n", st);
        return 0;
    }

    if (as->parsed()) {
        readset_ptr queries = load_reads(as_queries, "assign");
        readset_ptr refs = load_reads(as_refs, "assign");
        matrix_ptr cross;
        if (!as_cross.empty()) cross = load_matrix(as_cross, "assign");
        divscope_assignments* rows = nullptr;
        check(divscope_classify(queries.get(), refs.get(), as_labels.c_str(),
                                cross ? cross.get() : nullptr, as_gap,
                                as_threads, &rows),
              "assign");
        assignments_ptr keep(rows);
        check(divscope_assignments_write(rows, as_out.c_str()), "assign");
        return 0;
    }

    if (hx->parsed()) {
        size_t axis_i = 0, axis_j = 1;
        if (!parse_axes(hx_axes, axis_i, axis_j)) {
            std::fprintf(stderr, "divscope: hexbin: bad --axes '%s'\n",
                         hx_axes.c_str());
            return 2;
        }
        embedding_ptr e = load_embedding(hx_embed, "hexbin");
        divscope_hexbin* grid = nullptr;
        check(divscope_hexbin_compute(e.get(), axis_i, axis_j, hx_radius,
                                      hx_threads, &grid),
              "hexbin");
        hexbin_ptr keep(grid);
        check(divscope_hexbin_write(grid, hx_out.c_str()), "hexbin");
        return 0;
    }

    if (pc->parsed()) {
        embedding_ptr e = load_embedding(pc_embed, "pcoords");
        assignments_ptr labels;
        if (!pc_labels.empty()) {
            divscope_assignments* rows = nullptr;
            check(divscope_assignments_load(pc_labels.c_str(), &rows), "pcoords");
            labels.reset(rows);
        }
        check(divscope_pcoords_write(e.get(), pc_k,
                                     labels ? labels.get() : nullptr,
                                     pc_filter.empty() ? nullptr : pc_filter.c_str(),
                                     pc_out.c_str()),
              "pcoords");
        return 0;
    }

    if (pipe->parsed()) {
        size_t axis_i = 0, axis_j = 1;
        if (!parse_axes(pl_axes, axis_i, axis_j)) {
            std::fprintf(stderr, "divscope: pipeline: bad --axes '%s'\n",
                         pl_axes.c_str());
            return 2;
        }
        pl.input_fasta = pl_in.c_str();
        pl.refs_fasta = pl_refs.empty() ? nullptr : pl_refs.c_str();
        pl.labels_tsv = pl_labels.empty() ? nullptr : pl_labels.c_str();
        pl.outdir = pl_outdir.c_str();
        pl.hex_axis_i = axis_i;
        pl.hex_axis_j = axis_j;
        char error_buf[1024];
        const int code = divscope_run_pipeline(&pl, error_buf, sizeof(error_buf));
        if (code != 0)
            std::fprintf(stderr, "divscope: pipeline: %s\n", error_buf);
        else
            std::printf("%s/manifest.json\n", pl_outdir.c_str());
        return code;
    }

    return 2;
}
