#include "testdata.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>

#include "rng.hpp"

namespace testdata {

using divscope::bounded_uint64;
using divscope::uniform_closed_open;

std::string random_dna(std::mt19937_64& eng, std::size_t len, double n_rate) {
    static const char bases[4] = {'A', 'C', 'G', 'T'};
    std::string s(len, 'A');
    for (std::size_t i = 0; i < len; ++i) {
        if (n_rate > 0.0 && uniform_closed_open(eng) < n_rate)
            s[i] = 'N';
        else
            s[i] = bases[bounded_uint64(eng, 4)];
    }
    return s;
}

divscope::ReadSet random_reads(std::size_t count, std::size_t length,
                               std::uint64_t seed, double n_rate) {
    std::mt19937_64 eng(seed);
    divscope::ReadSet rs;
    rs.source = "<synthetic>";
    rs.reads.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        rs.reads.push_back({"r" + std::to_string(i), random_dna(eng, length, n_rate)});
    return rs;
}

char next_base(char c) {
    switch (c) {
        case 'A': return 'C';
        case 'C': return 'G';
        case 'G': return 'T';
        default: return 'A';
    }
}

std::string mutate_positions(std::string seq,
                             const std::vector<std::size_t>& positions) {
    for (std::size_t p : positions) seq[p] = next_base(seq[p]);
    return seq;
}

std::string mutate_first_evens(std::string seq, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) seq[2 * i] = next_base(seq[2 * i]);
    return seq;
}

FamilySet ladder_families(std::size_t length, int families, std::size_t step,
                          std::size_t per_family, double noise_rate,
                          std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    const std::string base = random_dna(eng, length);
    FamilySet out;
    out.reads.source = "<synthetic>";
    for (int k = 1; k <= families; ++k) {
        const std::string family_seed =
            mutate_first_evens(base, step * static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < per_family; ++j) {
            std::string read = family_seed;
            for (char& c : read)
                if (uniform_closed_open(eng) < noise_rate) c = next_base(c);
            out.reads.reads.push_back(
                {"f" + std::to_string(k) + "_" + std::to_string(j), std::move(read)});
            out.family.push_back(k);
        }
    }
    return out;
}

TruthTable build_truth_table(std::size_t cases, std::uint64_t seed) {
    constexpr std::size_t kLen = 100;
    constexpr std::size_t kStep = 8;  // inter-species ladder distance
    std::mt19937_64 eng(seed);
    const std::string base = random_dna(eng, kLen);

    // species 1..4 on the ladder; species 5 = species 4 plus two isolated
    // odd-position substitutions, so 4 and 5 are distance 2 apart
    std::vector<std::string> seeds(6);
    for (int s = 1; s <= 4; ++s)
        seeds[static_cast<std::size_t>(s)] =
            mutate_first_evens(base, kStep * static_cast<std::size_t>(s));
    seeds[5] = mutate_positions(seeds[4], {81, 91});

    TruthTable t;
    t.queries.source = "<synthetic>";
    t.refs.source = "<synthetic>";
    for (int s = 1; s <= 5; ++s) {
        const std::string species = "species_" + std::to_string(s);
        for (int c = 0; c < 3; ++c) {
            const std::string id =
                "ref" + std::to_string(s) + "_" + std::to_string(c);
            t.refs.reads.push_back({id, seeds[static_cast<std::size_t>(s)]});
            t.labels[id] = species;
        }
    }

    // isolated odd positions outside every even-ladder zone (zones end at 78)
    const std::vector<std::size_t> odd_spots = {83, 87, 95, 99};
    for (std::size_t i = 0; i < cases; ++i) {
        const std::string qid = "q" + std::to_string(i);
        const int slot = static_cast<int>(i % 10);
        if (slot < 6) {
            // Assigned to species 1..3 with 0..3 extra substitutions
            const int s = slot / 2 + 1;
            const std::size_t muts = i % 4;
            std::vector<std::size_t> pos(odd_spots.begin(),
                                         odd_spots.begin() + muts);
            t.queries.reads.push_back(
                {qid, mutate_positions(seeds[static_cast<std::size_t>(s)], pos)});
            t.expected.push_back(divscope::AssignStatus::assigned);
            t.expected_species.push_back("species_" + std::to_string(s));
        } else if (slot < 8) {
            // near both species 4 and 5
            std::string q;
            switch (i % 3) {
                case 0: q = seeds[4]; break;
                case 1: q = seeds[5]; break;
                default: q = mutate_positions(seeds[4], {81}); break;
            }
            t.queries.reads.push_back({qid, std::move(q)});
            t.expected.push_back(divscope::AssignStatus::ambiguous);
            t.expected_species.push_back("");
        } else {
            // far from everything: >= 4 substitutions beyond every ladder zone
            std::vector<std::size_t> pos(odd_spots);
            if (i % 2) pos.push_back(79);
            t.queries.reads.push_back({qid, mutate_positions(base, pos)});
            t.expected.push_back(divscope::AssignStatus::unknown);
            t.expected_species.push_back("");
        }
    }
    return t;
}

std::string scratch_dir(const std::string& tag) {
    static std::atomic<std::uint64_t> counter{0};
    const std::uint64_t id = counter.fetch_add(1);
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() /
                 ("divscope_test_" + tag + "_" + std::to_string(::getpid()) +
                  "_" + std::to_string(id));
    fs::create_directories(p);
    return p.string();
}

std::vector<double> uniform_box(std::size_t n, std::size_t dim,
                                std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::vector<double> pts(n * dim);
    for (double& v : pts) v = uniform_closed_open(eng);
    return pts;
}

divscope::DistanceMatrix euclidean_matrix(const std::vector<double>& pts,
                                          std::size_t n, std::size_t dim) {
    divscope::DistanceMatrix d;
    d.rows = d.cols = n;
    d.symmetric = true;
    d.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double diff = pts[i * dim + c] - pts[j * dim + c];
                sq += diff * diff;
            }
            const double dist = std::sqrt(sq);
            d.values[i * n + j] = dist;
            d.values[j * n + i] = dist;
        }
    }
    return d;
}

divscope::EmbeddingTable gaussian_pair_table(std::size_t n, double mean1_x,
                                             double mean1_y, double mean2_x,
                                             double mean2_y,
                                             std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    divscope::EmbeddingTable t;
    t.dims = 2;
    t.coords.resize(n * 2);
    divscope::fill_gaussian(eng, t.coords.data(), n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const bool second = i >= n / 2;
        t.coords[i * 2] += second ? mean2_x : mean1_x;
        t.coords[i * 2 + 1] += second ? mean2_y : mean1_y;
        t.ids.push_back("p" + std::to_string(i));
    }
    return t;
}

}  // namespace testdata
