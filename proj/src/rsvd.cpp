#include "rsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace divscope {

namespace {

// out = G * m, parallel over row blocks of G. The inner loop runs j in
// ascending order regardless of the thread count, and each worker writes a
// disjoint slice of rows, so results are bit-identical across thread counts.
RowMatrix multiply_sym(SymView g, const RowMatrix& m, unsigned threads) {
    const std::size_t n = g.n;
    const std::size_t k = static_cast<std::size_t>(m.cols());
    RowMatrix out(n, k);
    parallel_chunks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double* out_row = out.data() + i * k;
            std::fill(out_row, out_row + k, 0.0);
            const double* grow = g.data + i * n;
            for (std::size_t j = 0; j < n; ++j) {
                const double gij = grow[j];
                if (gij == 0.0) continue;
                const double* mrow = m.data() + j * k;
                for (std::size_t c = 0; c < k; ++c) out_row[c] += gij * mrow[c];
            }
        }
    });
    return out;
}

RowMatrix thin_orthonormal(const RowMatrix& y) {
    const Eigen::Index n = y.rows();
    const Eigen::Index k = y.cols();
    Eigen::HouseholderQR<RowMatrix> qr(y);
    RowMatrix q = qr.householderQ() * RowMatrix::Identity(n, k);
    return q;
}

void check_symmetric(SymView g) {
    if (g.n == 0) throw Error(errc::invalid_argument, "empty matrix");
    double maxabs = 0.0;
    double maxasym = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = i; j < g.n; ++j) {
            const double a = g.data[i * g.n + j];
            const double b = g.data[j * g.n + i];
            maxabs = std::max(maxabs, std::abs(a));
            maxasym = std::max(maxasym, std::abs(a - b));
        }
    }
    if (maxasym > 1e-10 * std::max(1.0, maxabs))
        throw Error(errc::not_symmetric, "matrix is not symmetric");
}

}  // namespace

double frobenius_sq(SymView g, unsigned threads) {
    const std::size_t n = g.n;
    std::vector<double> row_sq(n, 0.0);
    parallel_chunks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = g.data + i * n;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += row[j] * row[j];
            row_sq[i] = s;
        }
    });
    // reduce in index order so the total does not depend on scheduling
    double total = 0.0;
    for (double s : row_sq) total += s;
    return total;
}

RowMatrix randomized_range(SymView g, const SolverOptions& opts,
                           unsigned threads) {
    if (opts.rank < 1) throw Error(errc::invalid_argument, "rank must be >= 1");
    const std::size_t n = g.n;
    const std::size_t width = opts.rank + opts.oversampling;
    if (width > n)
        throw Error(errc::rank_too_large,
                    "rank + oversampling exceeds matrix order");

    RowMatrix omega(n, width);
    std::mt19937_64 eng(opts.seed);
    fill_gaussian(eng, omega.data(), n * width);

    RowMatrix q = thin_orthonormal(multiply_sym(g, omega, threads));
    for (std::size_t t = 0; t < opts.power_iters; ++t) {
        q = thin_orthonormal(multiply_sym(g, q, threads));
        q = thin_orthonormal(multiply_sym(g, q, threads));
    }
    return q;
}

Spectrum eigs_sym(SymView g, const SolverOptions& opts, unsigned threads) {
    check_symmetric(g);
    const std::size_t n = g.n;
    RowMatrix q = randomized_range(g, opts, threads);
    const std::size_t width = static_cast<std::size_t>(q.cols());

    RowMatrix gq = multiply_sym(g, q, threads);
    RowMatrix b = q.transpose() * gq;
    RowMatrix bsym = 0.5 * (b + RowMatrix(b.transpose()));

    Eigen::SelfAdjointEigenSolver<RowMatrix> es(bsym);
    if (es.info() != Eigen::Success)
        throw Error(errc::internal, "small eigensolve failed");
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    std::vector<std::size_t> order(width);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t c) {
                         const double va = vals[static_cast<Eigen::Index>(a)];
                         const double vc = vals[static_cast<Eigen::Index>(c)];
                         if (std::abs(va) != std::abs(vc))
                             return std::abs(va) > std::abs(vc);
                         return va > vc;
                     });

    const std::size_t keep = std::min(opts.rank, width);
    Spectrum out;
    out.eigenvalues.resize(keep);
    RowMatrix small(width, keep);
    for (std::size_t a = 0; a < keep; ++a) {
        const auto src = static_cast<Eigen::Index>(order[a]);
        out.eigenvalues[a] = vals[src];
        small.col(static_cast<Eigen::Index>(a)) = vecs.col(src);
    }
    out.vectors = q * small;  // n x keep, orthonormal columns

    double sum_sq = 0.0;
    for (double lam : out.eigenvalues) sum_sq += lam * lam;
    out.resid = std::sqrt(std::max(0.0, frobenius_sq(g, threads) - sum_sq));
    (void)n;
    return out;
}

double stable_rank(SymView g, unsigned threads) {
    check_symmetric(g);
    const double fro2 = frobenius_sq(g, threads);
    if (fro2 == 0.0)
        throw Error(errc::zero_matrix, "stable rank undefined for zero matrix");

    const std::size_t n = g.n;
    RowMatrix v(n, 1);
    std::mt19937_64 eng(0x5eedULL);
    fill_gaussian(eng, v.data(), n);
    v /= v.norm();

    double sigma = 0.0;
    for (int it = 0; it < 20000; ++it) {
        RowMatrix w = multiply_sym(g, v, threads);
        const double norm = w.norm();
        if (norm == 0.0) {
            // start vector in the kernel; nudge with the next gaussian draw
            fill_gaussian(eng, v.data(), n);
            v /= v.norm();
            sigma = 0.0;
            continue;
        }
        v = w / norm;
        if (sigma != 0.0 && std::abs(norm - sigma) <= 1e-13 * norm) {
            sigma = norm;
            break;
        }
        sigma = norm;
    }
    return fro2 / (sigma * sigma);
}

double stable_rank(const Spectrum& s) {
    double sum_sq = 0.0;
    double max_sq = 0.0;
    for (double lam : s.eigenvalues) {
        sum_sq += lam * lam;
        max_sq = std::max(max_sq, lam * lam);
    }
    if (max_sq == 0.0)
        throw Error(errc::zero_matrix, "stable rank undefined for zero spectrum");
    return sum_sq / max_sq;
}

}  // namespace divscope
