#ifndef DIVSCOPE_RSVD_HPP
#define DIVSCOPE_RSVD_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace divscope {

// Row-major keeps our block products and the TSV/DVS layouts in one order.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Non-owning view of a dense symmetric n x n matrix, row-major.
struct SymView {
    const double* data = nullptr;
    std::size_t n = 0;
};

struct SolverOptions {
    std::size_t rank = 1;
    std::size_t oversampling = 10;
    std::size_t power_iters = 2;
    std::uint64_t seed = 0;
};

// Approximate eigenpairs, sorted by |lambda| descending; on equal magnitude
// the positive eigenvalue comes first.
struct Spectrum {
    std::vector<double> eigenvalues;
    RowMatrix vectors;  // n x r, column alpha pairs with eigenvalues[alpha]
    double resid = 0.0;  // sqrt(max(0, ||G||_F^2 - sum lambda^2)) estimate
};

// Gaussian range finder with power iterations.
//
// Omega is n x (rank + oversampling) standard normal, drawn row-major from
// the seed; Y = G Omega, then power_iters rounds of Y <- G (G Y) with
// re-orthonormalization between every application of G. Returns an
// orthonormal basis of the final Y. Products over G are data-parallel by
// row blocks with a fixed traversal order, so the result is bit-identical
// for every thread count.
RowMatrix randomized_range(SymView g, const SolverOptions& opts,
                           unsigned threads = 1);

// Rayleigh-Ritz extraction on the randomized range: B = Q^T G Q, dense EVD
// of B, eigenpairs lifted through Q, top `rank` kept by |lambda| with signs
// from the small EVD.
Spectrum eigs_sym(SymView g, const SolverOptions& opts, unsigned threads = 1);

// ||G||_F^2 / ||G||_S^2. The Frobenius norm is exact; the spectral norm
// comes from a power iteration driven to near machine precision (well past
// the 1e-6 relative contract). Throws zero_matrix on G = 0.
double stable_rank(SymView g, unsigned threads = 1);

// Same diagnostic from an already computed spectrum (a proxy: only the
// computed eigenvalues contribute).
double stable_rank(const Spectrum& s);

// Exact squared Frobenius norm with a thread-count-independent summation
// order. Shared with the MDS reconstruction diagnostics.
double frobenius_sq(SymView g, unsigned threads = 1);

}  // namespace divscope

#endif
