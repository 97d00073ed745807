#include "mds.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace divscope {

GramMatrix gram_from_distances(const DistanceMatrix& d, unsigned threads) {
    if (d.rows != d.cols || !d.symmetric)
        throw Error(errc::not_symmetric,
                    "gram matrix requires a symmetric distance matrix");
    const std::size_t n = d.rows;
    if (n == 0) throw Error(errc::empty_input, "empty distance matrix");

    double maxabs = 0.0;
    for (double v : d.values) maxabs = std::max(maxabs, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(d.at(i, j) - d.at(j, i)) > 1e-12 * std::max(1.0, maxabs))
                throw Error(errc::not_symmetric,
                            "distance matrix values are not symmetric");

    // row means of squared distances (== column means by symmetry)
    std::vector<double> row_mean(n, 0.0);
    parallel_chunks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* row = d.values.data() + i * n;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += row[j] * row[j];
            row_mean[i] = s / static_cast<double>(n);
        }
    });
    double grand = 0.0;
    for (double m : row_mean) grand += m;
    grand /= static_cast<double>(n);

    GramMatrix g;
    g.n = n;
    g.values.assign(n * n, 0.0);
    parallel_chunks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double dij = d.at(i, j);
                const double val =
                    -0.5 * (dij * dij - row_mean[i] - row_mean[j] + grand);
                g.values[i * n + j] = val;
            }
        }
    });
    // mirror the strict lower triangle so symmetry is bit exact
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) g.values[i * n + j] = g.values[j * n + i];
    return g;
}

namespace {

// make the largest-magnitude entry positive; first index wins ties
void sign_normalize(double* col, std::size_t n, std::size_t stride) {
    std::size_t best = 0;
    double best_abs = std::abs(col[0]);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = std::abs(col[i * stride]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    if (col[best * stride] < 0.0)
        for (std::size_t i = 0; i < n; ++i) col[i * stride] = -col[i * stride];
}

}  // namespace

Embedding embed_from_spectrum(const Spectrum& s, std::size_t requested_rank) {
    Embedding e;
    e.n = static_cast<std::size_t>(s.vectors.rows());

    double maxabs = 0.0;
    for (double lam : s.eigenvalues) maxabs = std::max(maxabs, std::abs(lam));
    const double eps = 1e-9 * maxabs;

    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < s.eigenvalues.size(); ++a) {
        const double lam = s.eigenvalues[a];
        if (lam > eps && keep.size() < requested_rank)
            keep.push_back(a);
        else if (lam < 0.0)
            e.dropped_negative_mass += -lam;
    }

    e.r = keep.size();
    e.truncated = e.r < requested_rank;
    e.eigenvalues.reserve(e.r);
    e.coords.assign(e.n * e.r, 0.0);
    for (std::size_t c = 0; c < e.r; ++c) {
        const std::size_t a = keep[c];
        const double lam = s.eigenvalues[a];
        e.eigenvalues.push_back(lam);
        const double scale = std::sqrt(lam);
        for (std::size_t i = 0; i < e.n; ++i)
            e.coords[i * e.r + c] =
                s.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
        sign_normalize(e.coords.data() + c, e.n, e.r);
        for (std::size_t i = 0; i < e.n; ++i) e.coords[i * e.r + c] *= scale;
    }
    return e;
}

Embedding embed(SymView g, std::size_t rank, SolverOptions opts,
                unsigned threads) {
    if (rank < 1 || rank > g.n)
        throw Error(errc::rank_too_large, "rank must be in [1, n]");
    opts.rank = rank;
    opts.oversampling = std::min(opts.oversampling, g.n - rank);
    Spectrum s = eigs_sym(g, opts, threads);
    return embed_from_spectrum(s, rank);
}

double reconstruction_error(SymView g, const Embedding& e,
                            unsigned threads) {
    if (e.n != g.n)
        throw Error(errc::shape_mismatch, "embedding/gram size mismatch");
    const std::size_t n = g.n;
    const std::size_t r = e.r;
    std::vector<double> row_sq(n, 0.0);
    parallel_chunks(n, threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double* xi = e.coords.data() + i * r;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double* xj = e.coords.data() + j * r;
                double dot = 0.0;
                for (std::size_t c = 0; c < r; ++c) dot += xi[c] * xj[c];
                const double diff = g.data[i * n + j] - dot;
                s += diff * diff;
            }
            row_sq[i] = s;
        }
    });
    double total = 0.0;
    for (double s : row_sq) total += s;
    return std::sqrt(total);
}

void write_embedding_tsv(const Embedding& e,
                         const std::vector<std::string>& ids,
                         const std::string& path) {
    if (ids.size() != e.n)
        throw Error(errc::shape_mismatch, "id count does not match embedding");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    out << "id";
    for (std::size_t c = 0; c < e.r; ++c) out << "\tdim" << (c + 1);
    out << '\n';
    for (std::size_t i = 0; i < e.n; ++i) {
        out << ids[i];
        for (std::size_t c = 0; c < e.r; ++c)
            out << '\t' << format_double(e.coords[i * e.r + c]);
        out << '\n';
    }
    if (!out.flush()) throw Error(errc::io_error, "failed writing " + path);
}

void write_embedding_meta(
    const Embedding& e, const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& extra) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    out << "rank=" << e.r << '\n';
    out << "truncated=" << (e.truncated ? 1 : 0) << '\n';
    out << "eigenvalues=";
    for (std::size_t i = 0; i < e.eigenvalues.size(); ++i) {
        if (i) out << ',';
        out << format_double(e.eigenvalues[i]);
    }
    out << '\n';
    out << "dropped_negative_mass=" << format_double(e.dropped_negative_mass)
        << '\n';
    for (const auto& [k, v] : extra) out << k << '=' << v << '\n';
    if (!out.flush()) throw Error(errc::io_error, "failed writing " + path);
}

EmbeddingTable load_embedding_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(errc::bad_format, path + ": empty embedding table");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    EmbeddingTable t;
    {
        std::istringstream header(line);
        std::string tok;
        if (!std::getline(header, tok, '\t') || tok != "id")
            throw Error(errc::bad_format, path + ": missing id header column");
        while (std::getline(header, tok, '\t')) ++t.dims;
        if (t.dims == 0)
            throw Error(errc::bad_format, path + ": no dimension columns");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string tok;
        if (!std::getline(row, tok, '\t') || tok.empty())
            throw Error(errc::bad_format,
                        path + ": missing id on line " + std::to_string(lineno));
        t.ids.push_back(tok);
        std::size_t got = 0;
        while (std::getline(row, tok, '\t')) {
            char* endp = nullptr;
            const double v = std::strtod(tok.c_str(), &endp);
            if (endp == tok.c_str() || *endp != '\0')
                throw Error(errc::bad_format, path + ": bad number '" + tok +
                                                  "' on line " +
                                                  std::to_string(lineno));
            t.coords.push_back(v);
            ++got;
        }
        if (got != t.dims)
            throw Error(errc::bad_format,
                        path + ": expected " + std::to_string(t.dims) +
                            " coordinates on line " + std::to_string(lineno));
    }
    if (t.ids.empty())
        throw Error(errc::empty_input, path + ": no embedding rows");
    return t;
}

}  // namespace divscope
