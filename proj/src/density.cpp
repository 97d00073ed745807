#include "density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <utility>

#include "error.hpp"
#include "parallel.hpp"
#include "textio.hpp"

namespace divscope {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

void check_axes(const EmbeddingTable& t, std::size_t i, std::size_t j) {
    if (i == j || i >= t.dims || j >= t.dims)
        throw Error(errc::bad_axis, "hexbin axes must be two distinct embedding dimensions");
}

struct CellCenter {
    double x, y;
};

CellCenter center_of(double origin_x, double origin_y, double radius, long q,
                     long r) {
    return {origin_x + kSqrt3 * radius * (static_cast<double>(q) +
                                          static_cast<double>(r) / 2.0),
            origin_y + 1.5 * radius * static_cast<double>(r)};
}

std::pair<long, long> nearest_cell(double origin_x, double origin_y,
                                   double radius, double x, double y) {
    const double px = (x - origin_x) / radius;
    const double py = (y - origin_y) / radius;
    const double rf = py / 1.5;
    const double qf = px / kSqrt3 - rf / 2.0;

    // cube rounding locates the containing hexagon up to fp noise
    const double xf = qf, zf = rf, yf = -qf - rf;
    double rx = std::round(xf), rz = std::round(zf), ry = std::round(yf);
    const double dx = std::abs(rx - xf), dz = std::abs(rz - zf),
                 dy = std::abs(ry - yf);
    if (dx > dy && dx > dz)
        rx = -ry - rz;
    else if (dz > dy)
        rz = -rx - ry;
    const long q0 = static_cast<long>(rx);
    const long r0 = static_cast<long>(rz);

    // refine over the cell and its six neighbors with the exact tie rule
    static constexpr long kOff[7][2] = {{0, 0},  {1, 0},  {-1, 0}, {0, 1},
                                        {0, -1}, {1, -1}, {-1, 1}};
    long best_q = q0, best_r = r0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const auto& off : kOff) {
        const long q = q0 + off[0];
        const long r = r0 + off[1];
        const CellCenter c = center_of(origin_x, origin_y, radius, q, r);
        const double ddx = x - c.x, ddy = y - c.y;
        const double d2 = ddx * ddx + ddy * ddy;
        if (d2 < best_d2 ||
            (d2 == best_d2 && std::pair(q, r) < std::pair(best_q, best_r))) {
            best_d2 = d2;
            best_q = q;
            best_r = r;
        }
    }
    return {best_q, best_r};
}

}  // namespace

double default_hex_radius(const EmbeddingTable& t, std::size_t axis_i,
                          std::size_t axis_j) {
    check_axes(t, axis_i, axis_j);
    double min_x = t.coords[axis_i], max_x = min_x;
    double min_y = t.coords[axis_j], max_y = min_y;
    for (std::size_t p = 0; p < t.size(); ++p) {
        const double x = t.coords[p * t.dims + axis_i];
        const double y = t.coords[p * t.dims + axis_j];
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    }
    const double range = std::max(max_x - min_x, max_y - min_y);
    return range > 0.0 ? range / 50.0 : 1.0;
}

HexBinGrid hexbin(const EmbeddingTable& t, std::size_t axis_i,
                  std::size_t axis_j, double radius, unsigned threads) {
    check_axes(t, axis_i, axis_j);
    if (t.size() == 0) throw Error(errc::empty_input, "no points to bin");
    if (radius <= 0.0) radius = default_hex_radius(t, axis_i, axis_j);

    HexBinGrid g;
    g.axis_i = axis_i;
    g.axis_j = axis_j;
    g.radius = radius;
    double min_x = t.coords[axis_i];
    double min_y = t.coords[axis_j];
    for (std::size_t p = 0; p < t.size(); ++p) {
        min_x = std::min(min_x, t.coords[p * t.dims + axis_i]);
        min_y = std::min(min_y, t.coords[p * t.dims + axis_j]);
    }
    g.origin_x = min_x;
    g.origin_y = min_y;

    const unsigned workers =
        std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(t.size())));
    std::vector<std::map<std::pair<long, long>, std::size_t>> partial(workers);
    parallel_chunks(t.size(), workers,
                    [&](unsigned w, std::size_t begin, std::size_t end) {
                        auto& counts = partial[w];
                        for (std::size_t p = begin; p < end; ++p) {
                            const double x = t.coords[p * t.dims + axis_i];
                            const double y = t.coords[p * t.dims + axis_j];
                            ++counts[nearest_cell(g.origin_x, g.origin_y,
                                                  g.radius, x, y)];
                        }
                    });
    std::map<std::pair<long, long>, std::size_t> counts;
    for (const auto& m : partial)
        for (const auto& [cell, c] : m) counts[cell] += c;

    g.bins.reserve(counts.size());
    for (const auto& [cell, c] : counts) {
        const CellCenter ctr =
            center_of(g.origin_x, g.origin_y, g.radius, cell.first, cell.second);
        g.bins.push_back({cell.first, cell.second, ctr.x, ctr.y, c});
    }
    return g;
}

std::pair<long, long> hex_cell(const HexBinGrid& g, double x, double y) {
    return nearest_cell(g.origin_x, g.origin_y, g.radius, x, y);
}

std::vector<double> log_counts(const HexBinGrid& g) {
    std::vector<double> out;
    out.reserve(g.bins.size());
    for (const auto& b : g.bins)
        out.push_back(std::log10(1.0 + static_cast<double>(b.count)));
    return out;
}

ParallelCoordsTable parallel_coords(const EmbeddingTable& t, std::size_t k,
                                    const std::vector<std::string>& labels,
                                    const std::string& species_filter) {
    if (k < 1) throw Error(errc::invalid_argument, "k must be >= 1");
    if (k > t.dims)
        throw Error(errc::rank_too_large,
                    "k exceeds the embedding rank (" + std::to_string(t.dims) + ")");
    if (!labels.empty() && labels.size() != t.size())
        throw Error(errc::shape_mismatch, "label count does not match embedding");

    ParallelCoordsTable out;
    out.k = k;
    for (std::size_t p = 0; p < t.size(); ++p) {
        const std::string& label = labels.empty() ? std::string() : labels[p];
        if (!species_filter.empty() && label != species_filter) continue;
        ParallelCoordsRow row;
        row.id = t.ids[p];
        row.values.assign(t.coords.begin() + static_cast<std::ptrdiff_t>(p * t.dims),
                          t.coords.begin() + static_cast<std::ptrdiff_t>(p * t.dims + k));
        row.label = label;
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_hexbin_tsv(const HexBinGrid& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    out << "q\tr\tcenter_x\tcenter_y\tcount\tlogcount\n";
    const std::vector<double> logs = log_counts(g);
    for (std::size_t i = 0; i < g.bins.size(); ++i) {
        const HexBin& b = g.bins[i];
        out << b.q << '\t' << b.r << '\t' << format_double(b.center_x) << '\t'
            << format_double(b.center_y) << '\t' << b.count << '\t'
            << format_double(logs[i]) << '\n';
    }
    if (!out.flush()) throw Error(errc::io_error, "failed writing " + path);
}

void write_pcoords_tsv(const ParallelCoordsTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    out << "id";
    for (std::size_t c = 0; c < t.k; ++c) out << "\tdim" << (c + 1);
    out << "\tlabel\n";
    for (const auto& row : t.rows) {
        out << row.id;
        for (double v : row.values) out << '\t' << format_double(v);
        out << '\t' << row.label << '\n';
    }
    if (!out.flush()) throw Error(errc::io_error, "failed writing " + path);
}

EmbeddingTable table_from_embedding(const Embedding& e,
                                    const std::vector<std::string>& ids) {
    if (ids.size() != e.n)
        throw Error(errc::shape_mismatch, "id count does not match embedding");
    EmbeddingTable t;
    t.ids = ids;
    t.dims = e.r;
    t.coords = e.coords;
    return t;
}

}  // namespace divscope
