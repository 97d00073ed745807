#include "distmat.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>

#include "error.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace divscope {

namespace {

// Number of upper-triangle pairs strictly before row i.
inline std::uint64_t row_offset(std::uint64_t i, std::uint64_t n) {
    return i * (n - 1) - i * (i - 1) / 2;
}

// Maps a linear pair index k in [0, n(n-1)/2) to the (i, j) pair with i < j,
// enumerated row-major over the upper triangle.
void pair_from_index(std::uint64_t k, std::uint64_t n, std::uint64_t& i,
                     std::uint64_t& j) {
    // Start from the real-valued inverse, then fix up; the guess is within
    // one row of the answer for all feasible sizes.
    double nf = static_cast<double>(n);
    double guess = nf - 0.5 - std::sqrt((nf - 0.5) * (nf - 0.5) - 2.0 * static_cast<double>(k));
    std::uint64_t gi = guess <= 0.0 ? 0 : static_cast<std::uint64_t>(guess);
    if (gi >= n - 1) gi = n - 2;
    while (gi > 0 && row_offset(gi, n) > k) --gi;
    while (row_offset(gi + 1, n) <= k) ++gi;
    i = gi;
    j = gi + 1 + (k - row_offset(gi, n));
}

void check_alignable(const ReadSet& rs) {
    for (const Read& r : rs.reads)
        if (r.sequence.empty())
            throw Error(errc::empty_sequence, "read '" + r.id + "' is empty");
}

}  // namespace

DistanceMatrix pairwise_self(const ReadSet& rs, const ScoringScheme& s,
                             unsigned threads, PairwiseStats* stats) {
    const std::size_t n = rs.size();
    if (n < 2)
        throw Error(errc::invalid_argument,
                    "pairwise_self needs at least 2 reads, got " + std::to_string(n));
    s.validate();
    check_alignable(rs);

    DistanceMatrix d;
    d.rows = d.cols = n;
    d.symmetric = true;
    d.values.assign(n * n, 0.0);

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::atomic<std::uint64_t> calls{0};
    double* out = d.values.data();

    parallel_chunks(total, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        if (begin >= end) return;
        std::uint64_t i, j;
        pair_from_index(begin, n, i, j);
        std::uint64_t local_calls = 0;
        for (std::uint64_t k = begin; k < end; ++k) {
            try {
                const double v = sw_distance(rs[i].sequence, rs[j].sequence, s);
                out[i * n + j] = v;
                out[j * n + i] = v;
            } catch (const Error& e) {
                throw Error(e.code(), "pair (" + std::to_string(i) + ", " +
                                          std::to_string(j) + "): " + e.what());
            }
            ++local_calls;
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
        calls.fetch_add(local_calls, std::memory_order_relaxed);
    });

    if (stats) stats->alignment_calls = calls.load();
    return d;
}

DistanceMatrix pairwise_cross(const ReadSet& queries, const ReadSet& refs,
                              const ScoringScheme& s, unsigned threads,
                              PairwiseStats* stats) {
    if (queries.empty() || refs.empty())
        throw Error(errc::invalid_argument, "pairwise_cross needs nonempty sets");
    s.validate();
    check_alignable(queries);
    check_alignable(refs);

    const std::size_t m = queries.size();
    const std::size_t n = refs.size();
    DistanceMatrix d;
    d.rows = m;
    d.cols = n;
    d.symmetric = false;
    d.values.assign(m * n, 0.0);

    std::atomic<std::uint64_t> calls{0};
    double* out = d.values.data();

    parallel_chunks(m * n, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        std::uint64_t local_calls = 0;
        for (std::size_t k = begin; k < end; ++k) {
            const std::size_t i = k / n;
            const std::size_t j = k % n;
            try {
                out[k] = sw_distance(queries[i].sequence, refs[j].sequence, s);
            } catch (const Error& e) {
                throw Error(e.code(), "pair (" + std::to_string(i) + ", " +
                                          std::to_string(j) + "): " + e.what());
            }
            ++local_calls;
        }
        calls.fetch_add(local_calls, std::memory_order_relaxed);
    });

    if (stats) stats->alignment_calls = calls.load();
    return d;
}

namespace {

constexpr char kMagic[4] = {'D', 'V', 'S', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int b = 3; b >= 0; --b) v = (v << 8) | p[b];
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
    return v;
}

std::uint64_t double_bits(double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    return v;
}

double bits_double(std::uint64_t v) {
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

}  // namespace

void write_matrix(const DistanceMatrix& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");

    std::string header;
    header.append(kMagic, 4);
    put_u32(header, kVersion);
    put_u64(header, d.rows);
    put_u64(header, d.cols);
    put_u64(header, d.symmetric ? 1u : 0u);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));

    std::string payload;
    payload.reserve(d.values.size() * 8);
    for (double v : d.values) put_u64(payload, double_bits(v));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) throw Error(errc::io_error, "write failed for " + path);
}

DistanceMatrix read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);

    unsigned char header[32];
    in.read(reinterpret_cast<char*>(header), 32);
    if (in.gcount() != 32)
        throw Error(errc::truncated, path + ": header truncated");
    if (std::memcmp(header, kMagic, 4) != 0)
        throw Error(errc::bad_format, path + ": bad magic");
    const std::uint32_t version = get_u32(header + 4);
    if (version != kVersion)
        throw Error(errc::bad_format,
                    path + ": unsupported version " + std::to_string(version));

    DistanceMatrix d;
    d.rows = get_u64(header + 8);
    d.cols = get_u64(header + 16);
    d.symmetric = (get_u64(header + 24) & 1) != 0;
    if (d.symmetric && d.rows != d.cols)
        throw Error(errc::bad_format, path + ": symmetric flag on non-square matrix");

    const std::uint64_t count = d.rows * d.cols;
    std::vector<unsigned char> payload(count * 8);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != payload.size())
        throw Error(errc::truncated, path + ": payload truncated");

    d.values.resize(count);
    for (std::uint64_t k = 0; k < count; ++k)
        d.values[k] = bits_double(get_u64(payload.data() + k * 8));
    return d;
}

void write_matrix_tsv(const DistanceMatrix& d,
                      const std::vector<std::string>& row_ids,
                      const std::vector<std::string>& col_ids,
                      const std::string& path) {
    if (row_ids.size() != d.rows || col_ids.size() != d.cols)
        throw Error(errc::shape_mismatch, "id lists do not match matrix shape");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");

    out << "id";
    for (const std::string& id : col_ids) out << '\t' << id;
    out << '\n';
    for (std::size_t i = 0; i < d.rows; ++i) {
        out << row_ids[i];
        for (std::size_t j = 0; j < d.cols; ++j)
            out << '\t' << format_double(d.at(i, j));
        out << '\n';
    }
    out.flush();
    if (!out) throw Error(errc::io_error, "write failed for " + path);
}

}  // namespace divscope
