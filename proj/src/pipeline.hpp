#ifndef DIVSCOPE_PIPELINE_HPP
#define DIVSCOPE_PIPELINE_HPP

#include <cstdint>
#include <string>

namespace divscope {

struct PipelineConfig {
    std::string input_fasta;
    std::string refs_fasta;  // optional; requires labels_tsv when set
    std::string labels_tsv;
    std::string outdir;
    std::size_t rank = 50;
    double gap = 0.97;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t oversampling = 10;
    std::size_t power_iters = 2;
    std::size_t hex_axis_i = 0;  // 0-based embedding dimensions
    std::size_t hex_axis_j = 1;
    std::size_t pcoords_k = 6;
};

// exit codes: 0 ok, 2 bad config, then one per stage
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDist = 3;
inline constexpr int kExitGram = 4;
inline constexpr int kExitMds = 5;  // eigs + embed
inline constexpr int kExitAssign = 6;
inline constexpr int kExitDensity = 7;
inline constexpr int kExitManifest = 8;

struct PipelineResult {
    int exit_code = kExitOk;
    std::string manifest_path;
    std::string failed_stage;  // empty on success
    std::string error;         // empty on success
};

// Runs dist -> gram -> eigs -> embed -> (assign) -> density, persisting each
// stage's artifacts under cfg.outdir and finishing with manifest.json. Files
// are written with a `.partial` suffix and renamed once complete, so a failed
// stage leaves its partial output visible. Never throws; failures are
// reported through the result (and echoed in the manifest).
PipelineResult run_pipeline(const PipelineConfig& cfg);

}  // namespace divscope

#endif
