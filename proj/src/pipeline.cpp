#include "pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "assign.hpp"
#include "density.hpp"
#include "distmat.hpp"
#include "error.hpp"
#include "mds.hpp"
#include "rsvd.hpp"
#include "seqio.hpp"
#include "textio.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace divscope {

namespace {

struct StageRecord {
    std::string name;
    double wall_seconds = 0.0;
    std::vector<std::string> artifacts;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// write through a .partial name; the real path appears only when complete
class Artifact {
public:
    Artifact(const fs::path& dir, const std::string& name)
        : final_(dir / name), partial_(dir / (name + ".partial")) {}
    std::string write_path() const { return partial_.string(); }
    std::string final_name() const { return final_.filename().string(); }
    void finalize() { fs::rename(partial_, final_); }

private:
    fs::path final_;
    fs::path partial_;
};

json config_echo(const PipelineConfig& cfg) {
    json j;
    j["input"] = cfg.input_fasta;
    j["refs"] = cfg.refs_fasta;
    j["labels"] = cfg.labels_tsv;
    j["outdir"] = cfg.outdir;
    j["rank"] = cfg.rank;
    j["gap"] = cfg.gap;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["oversampling"] = cfg.oversampling;
    j["power_iters"] = cfg.power_iters;
    j["hex_axes"] = {cfg.hex_axis_i + 1, cfg.hex_axis_j + 1};
    j["pcoords_k"] = cfg.pcoords_k;
    return j;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    PipelineResult res;
    if (cfg.input_fasta.empty() || cfg.outdir.empty() || cfg.rank < 1 ||
        !(cfg.gap > 0.0) || cfg.gap > 1.0 || cfg.threads < 1 ||
        (!cfg.refs_fasta.empty() && cfg.labels_tsv.empty()) ||
        (cfg.refs_fasta.empty() && !cfg.labels_tsv.empty()) ||
        cfg.hex_axis_i == cfg.hex_axis_j || cfg.pcoords_k < 1) {
        res.exit_code = kExitConfig;
        res.error = "invalid pipeline configuration";
        return res;
    }
    std::error_code ec;
    fs::create_directories(cfg.outdir, ec);
    if (ec) {
        res.exit_code = kExitConfig;
        res.error = "cannot create output directory " + cfg.outdir;
        return res;
    }
    const fs::path dir(cfg.outdir);

    std::vector<StageRecord> stages;
    std::string stage;
    int stage_exit = kExitDist;

    ReadSet reads;
    DistanceMatrix dist;
    GramMatrix gram;
    Spectrum spectrum;
    Embedding emb;
    std::size_t rank_eff = cfg.rank;
    std::vector<AssignmentResult> assignments;
    bool have_assignments = false;

    try {
        {
            stage = "dist";
            stage_exit = kExitDist;
            const auto t0 = std::chrono::steady_clock::now();
            reads = parse_fasta_file(cfg.input_fasta);
            dist = pairwise_self(reads, ScoringScheme{}, cfg.threads);
            Artifact a(dir, "distances.dvs");
            write_matrix(dist, a.write_path());
            a.finalize();
            stages.push_back({stage, seconds_since(t0), {a.final_name()}});
        }
        {
            stage = "gram";
            stage_exit = kExitGram;
            const auto t0 = std::chrono::steady_clock::now();
            gram = gram_from_distances(dist, cfg.threads);
            DistanceMatrix gm;
            gm.rows = gm.cols = gram.n;
            gm.symmetric = true;
            gm.values = gram.values;
            Artifact a(dir, "gram.dvs");
            write_matrix(gm, a.write_path());
            a.finalize();
            stages.push_back({stage, seconds_since(t0), {a.final_name()}});
        }
        {
            stage = "eigs";
            stage_exit = kExitMds;
            const auto t0 = std::chrono::steady_clock::now();
            rank_eff = std::min(cfg.rank, gram.n);
            SolverOptions opts;
            opts.rank = rank_eff;
            opts.oversampling = std::min(cfg.oversampling, gram.n - rank_eff);
            opts.power_iters = cfg.power_iters;
            opts.seed = cfg.seed;
            spectrum = eigs_sym(gram.view(), opts, cfg.threads);
            Artifact a(dir, "spectrum.meta");
            {
                std::ofstream out(a.write_path(), std::ios::binary);
                if (!out)
                    throw Error(errc::io_error, "cannot open " + a.write_path());
                out << "rank=" << rank_eff << '\n';
                out << "eigenvalues=";
                for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
                    if (i) out << ',';
                    out << format_double(spectrum.eigenvalues[i]);
                }
                out << '\n';
                out << "resid=" << format_double(spectrum.resid) << '\n';
                out << "stable_rank=" << format_double(stable_rank(spectrum))
                    << '\n';
                if (!out.flush())
                    throw Error(errc::io_error, "failed writing " + a.write_path());
            }
            a.finalize();
            stages.push_back({stage, seconds_since(t0), {a.final_name()}});
        }
        {
            stage = "embed";
            stage_exit = kExitMds;
            const auto t0 = std::chrono::steady_clock::now();
            emb = embed_from_spectrum(spectrum, rank_eff);
            Artifact tsv(dir, "embedding.tsv");
            Artifact meta(dir, "embedding.meta");
            write_embedding_tsv(emb, reads.ids(), tsv.write_path());
            write_embedding_meta(emb, meta.write_path(),
                                 {{"seed", std::to_string(cfg.seed)},
                                  {"requested_rank", std::to_string(cfg.rank)}});
            tsv.finalize();
            meta.finalize();
            stages.push_back(
                {stage, seconds_since(t0), {tsv.final_name(), meta.final_name()}});
        }
        if (!cfg.refs_fasta.empty()) {
            stage = "assign";
            stage_exit = kExitAssign;
            const auto t0 = std::chrono::steady_clock::now();
            ReadSet refs = parse_fasta_file(cfg.refs_fasta);
            ReferenceDB db =
                make_reference_db(std::move(refs), read_labels_tsv(cfg.labels_tsv));
            DistanceMatrix cross =
                pairwise_cross(reads, db.reads, ScoringScheme{}, cfg.threads);
            Artifact cdvs(dir, "cross.dvs");
            write_matrix(cross, cdvs.write_path());
            cdvs.finalize();
            assignments = classify(reads, db, cross, cfg.gap);
            have_assignments = true;
            Artifact atsv(dir, "assignments.tsv");
            write_assignments_tsv(assignments, atsv.write_path());
            atsv.finalize();
            stages.push_back({stage, seconds_since(t0),
                              {cdvs.final_name(), atsv.final_name()}});
        }
        {
            stage = "density";
            stage_exit = kExitDensity;
            const auto t0 = std::chrono::steady_clock::now();
            EmbeddingTable table = table_from_embedding(emb, reads.ids());
            HexBinGrid grid =
                hexbin(table, cfg.hex_axis_i, cfg.hex_axis_j, 0.0, cfg.threads);
            Artifact hextsv(dir, "hexbin.tsv");
            write_hexbin_tsv(grid, hextsv.write_path());
            hextsv.finalize();

            std::vector<std::string> labels;
            if (have_assignments) labels = color_table(table.ids, assignments);
            const std::size_t k = std::min(cfg.pcoords_k, table.dims);
            ParallelCoordsTable pc = parallel_coords(table, k, labels);
            Artifact pctsv(dir, "pcoords.tsv");
            write_pcoords_tsv(pc, pctsv.write_path());
            pctsv.finalize();
            stages.push_back({stage, seconds_since(t0),
                              {hextsv.final_name(), pctsv.final_name()}});
        }
    } catch (const std::exception& e) {
        res.exit_code = stage_exit;
        res.failed_stage = stage;
        res.error = "stage " + stage + ": " + e.what();
    }

    json manifest;
    manifest["config"] = config_echo(cfg);
    manifest["status"] = res.exit_code == kExitOk ? "ok" : "failed";
    if (res.exit_code != kExitOk) {
        manifest["failed_stage"] = res.failed_stage;
        manifest["error"] = res.error;
    }
    manifest["stages"] = json::array();
    manifest["artifacts"] = json::array();
    for (const auto& s : stages) {
        manifest["stages"].push_back(
            {{"name", s.name}, {"wall_seconds", s.wall_seconds}});
        for (const auto& a : s.artifacts)
            manifest["artifacts"].push_back({{"path", a}, {"stage", s.name}});
    }
    manifest["artifacts"].push_back(
        {{"path", "manifest.json"}, {"stage", "manifest"}});

    const fs::path mpath = dir / "manifest.json";
    std::ofstream mout(mpath, std::ios::binary);
    if (!mout || !(mout << manifest.dump(2) << '\n').flush()) {
        if (res.exit_code == kExitOk) {
            res.exit_code = kExitManifest;
            res.failed_stage = "manifest";
            res.error = "failed writing " + mpath.string();
        }
        return res;
    }
    res.manifest_path = mpath.string();
    return res;
}

}  // namespace divscope
