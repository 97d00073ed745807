#ifndef DIVSCOPE_DENSITY_HPP
#define DIVSCOPE_DENSITY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mds.hpp"

namespace divscope {

struct HexBin {
    long q = 0;
    long r = 0;
    double center_x = 0.0;
    double center_y = 0.0;
    std::size_t count = 0;
};

// Pointy-top axial lattice: center(q, r) = origin + (sqrt3*R*(q + r/2), 1.5*R*r).
struct HexBinGrid {
    std::size_t axis_i = 0;
    std::size_t axis_j = 1;
    double radius = 1.0;
    double origin_x = 0.0;
    double origin_y = 0.0;
    std::vector<HexBin> bins;  // sorted by (q, r) lexicographic, empty bins omitted
};

// Default circumradius: (largest axis range) / 50, or 1.0 when the cloud is
// a single point.
double default_hex_radius(const EmbeddingTable& t, std::size_t axis_i,
                          std::size_t axis_j);

// Bin the projection of the embedding onto the two axes. Each point goes to
// the nearest hex center; boundary ties break toward the smaller (q, r)
// pair. Passing radius <= 0 selects the default radius. Binning is
// parallel over points with per-worker maps merged in a fixed order.
HexBinGrid hexbin(const EmbeddingTable& t, std::size_t axis_i,
                  std::size_t axis_j, double radius = 0.0,
                  unsigned threads = 1);

// Nearest-center cell for one projected point; exposed so tests can compare
// against a brute-force scan.
std::pair<long, long> hex_cell(const HexBinGrid& g, double x, double y);

// log10(1 + count) per bin, parallel to g.bins.
std::vector<double> log_counts(const HexBinGrid& g);

struct ParallelCoordsRow {
    std::string id;
    std::vector<double> values;
    std::string label;
};

struct ParallelCoordsTable {
    std::size_t k = 0;
    std::vector<ParallelCoordsRow> rows;
};

// First k coordinates per read, in read order, with an optional label per
// row ("" when labels are absent). When `species_filter` is nonempty, only
// rows carrying exactly that label are kept.
ParallelCoordsTable parallel_coords(const EmbeddingTable& t, std::size_t k,
                                    const std::vector<std::string>& labels = {},
                                    const std::string& species_filter = "");

void write_hexbin_tsv(const HexBinGrid& g, const std::string& path);
void write_pcoords_tsv(const ParallelCoordsTable& t, const std::string& path);

EmbeddingTable table_from_embedding(const Embedding& e,
                                    const std::vector<std::string>& ids);

}  // namespace divscope

#endif
