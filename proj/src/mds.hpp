#ifndef DIVSCOPE_MDS_HPP
#define DIVSCOPE_MDS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "distmat.hpp"
#include "rsvd.hpp"

namespace divscope {

struct GramMatrix {
    std::size_t n = 0;
    std::vector<double> values;  // n x n row-major, exactly symmetric

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    SymView view() const { return SymView{values.data(), n}; }
};

struct Embedding {
    std::size_t n = 0;
    std::size_t r = 0;              // columns actually produced
    std::vector<double> coords;     // n x r row-major
    std::vector<double> eigenvalues;  // the retained positive ones, descending
    double dropped_negative_mass = 0.0;
    bool truncated = false;  // fewer positive eigenvalues than requested
};

// Double centering of squared distances:
//   gamma_ij = -1/2 (d_ij^2 - rowmean_i(d^2) - rowmean_j(d^2) + grandmean(d^2))
// Row and column sums of the result are zero. Only the upper triangle is
// computed; the lower is mirrored so the output is bit-exactly symmetric.
GramMatrix gram_from_distances(const DistanceMatrix& d, unsigned threads = 1);

// Classical MDS coordinates from the randomized eigensolve of the gram
// matrix. Eigenvalues <= 1e-9 * max|lambda| are discarded; negative ones
// accumulate into dropped_negative_mass. Each kept eigenvector is sign
// normalized (largest-magnitude entry positive, first index on ties) and
// scaled by sqrt(lambda). `opts.rank` is overridden by `rank`, and the
// oversampling is clamped so the sketch never exceeds the matrix order.
Embedding embed(SymView g, std::size_t rank, SolverOptions opts,
                unsigned threads = 1);
inline Embedding embed(const GramMatrix& g, std::size_t rank,
                       SolverOptions opts, unsigned threads = 1) {
    return embed(g.view(), rank, opts, threads);
}

// Same filtering/scaling applied to an existing spectrum (the pipeline
// computes the spectrum once and reuses it here).
Embedding embed_from_spectrum(const Spectrum& s, std::size_t requested_rank);

// || G - X X^T ||_F for the embedding coordinates X.
double reconstruction_error(SymView g, const Embedding& e,
                            unsigned threads = 1);
inline double reconstruction_error(const GramMatrix& g, const Embedding& e,
                                   unsigned threads = 1) {
    return reconstruction_error(g.view(), e, threads);
}

// --- embedding table IO ----------------------------------------------------

// Coordinates as written to / read from disk: a header `id dim1 .. dimr`
// followed by one row per point, tab separated.
struct EmbeddingTable {
    std::vector<std::string> ids;
    std::size_t dims = 0;
    std::vector<double> coords;  // ids.size() x dims row-major

    std::size_t size() const { return ids.size(); }
};

void write_embedding_tsv(const Embedding& e,
                         const std::vector<std::string>& ids,
                         const std::string& path);

// Sidecar `key=value` lines: rank, truncated, eigenvalues (comma separated),
// dropped_negative_mass, plus any extra pairs supplied by the caller.
void write_embedding_meta(
    const Embedding& e, const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& extra = {});

EmbeddingTable load_embedding_tsv(const std::string& path);

}  // namespace divscope

#endif
