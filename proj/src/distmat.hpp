#ifndef DIVSCOPE_DISTMAT_HPP
#define DIVSCOPE_DISTMAT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "align.hpp"
#include "seqio.hpp"

namespace divscope {

// Dense row-major distance matrix. Integer alignment distances are stored
// as float64 so the same container and file format carry the real-valued
// Gram/embedding stages.
struct DistanceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool symmetric = false;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

struct PairwiseStats {
    std::uint64_t alignment_calls = 0;
};

// Symmetric n x n matrix over one read set. Only the n(n-1)/2 upper-triangle
// pairs are aligned, then mirrored; the pair index space is chunked over
// workers with disjoint output slices, so the result is bit-identical for
// every thread count.
DistanceMatrix pairwise_self(const ReadSet& rs, const ScoringScheme& s,
                             unsigned threads, PairwiseStats* stats = nullptr);

// Rectangular |queries| x |refs| matrix, row i = query i, column j = ref j.
DistanceMatrix pairwise_cross(const ReadSet& queries, const ReadSet& refs,
                              const ScoringScheme& s, unsigned threads,
                              PairwiseStats* stats = nullptr);

// DVS1 container: magic "DVS1", u32 LE version, u64 LE rows, u64 LE cols,
// u64 LE flags (bit 0 = symmetric), rows*cols float64 LE row-major.
// Round-trips byte-exactly.
void write_matrix(const DistanceMatrix& d, const std::string& path);
DistanceMatrix read_matrix(const std::string& path);

// Secondary text export: header row of column ids, then one row per line
// as row id + tab-separated values.
void write_matrix_tsv(const DistanceMatrix& d,
                      const std::vector<std::string>& row_ids,
                      const std::vector<std::string>& col_ids,
                      const std::string& path);

}  // namespace divscope

#endif
