#include "seqio.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "rng.hpp"

namespace divscope {

std::vector<std::string> ReadSet::ids() const {
    std::vector<std::string> out;
    out.reserve(reads.size());
    for (const Read& r : reads) out.push_back(r.id);
    return out;
}

namespace {

// Uppercases, maps U->T, validates the {A,C,G,T,N} alphabet. pos counts
// bases within the record, 1-based, as required by the error contract.
void append_normalized(const std::string& line, Read& read, std::size_t& pos) {
    for (char raw : line) {
        ++pos;
        char c = raw;
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
        if (c == 'U') c = 'T';
        switch (c) {
            case 'A':
            case 'C':
            case 'G':
            case 'T':
            case 'N':
                read.sequence.push_back(c);
                break;
            default:
                throw Error(errc::invalid_character,
                            "invalid character '" + std::string(1, raw) +
                                "' in record '" + read.id + "' at position " +
                                std::to_string(pos));
        }
    }
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ReadSet parse_fasta(std::istream& in, const std::string& source) {
    ReadSet rs;
    rs.source = source;

    std::unordered_set<std::string> seen;
    std::string line;
    Read current;
    bool in_record = false;
    std::size_t base_pos = 0;

    auto finish_record = [&]() {
        if (!in_record) return;
        if (current.sequence.empty())
            throw Error(errc::bad_format,
                        "record '" + current.id + "' has no sequence");
        rs.reads.push_back(std::move(current));
        current = Read{};
    };

    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '>') {
            finish_record();
            std::string header = line.substr(1);
            const std::size_t ws = header.find_first_of(" \t");
            std::string id = ws == std::string::npos ? header : header.substr(0, ws);
            if (id.empty())
                throw Error(errc::bad_format, "record with empty id in " + source);
            if (!seen.insert(id).second)
                throw Error(errc::duplicate_id, "duplicate id '" + id + "'");
            current.id = std::move(id);
            in_record = true;
            base_pos = 0;
        } else {
            if (!in_record)
                throw Error(errc::bad_format,
                            "expected '>' header, got '" + line.substr(0, 16) +
                                "' in " + source);
            append_normalized(line, current, base_pos);
        }
    }
    finish_record();

    if (rs.reads.empty())
        throw Error(errc::empty_input, "no FASTA records in " + source);
    return rs;
}

ReadSet parse_fasta_string(std::string_view text, const std::string& source) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in, source);
}

ReadSet parse_fasta_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    return parse_fasta(in, path);
}

void write_fasta(const ReadSet& rs, std::ostream& out) {
    for (const Read& r : rs.reads) out << '>' << r.id << '\n' << r.sequence << '\n';
}

void write_fasta_file(const ReadSet& rs, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open " + path + " for writing");
    write_fasta(rs, out);
    out.flush();
    if (!out) throw Error(errc::io_error, "write failed for " + path);
}

ReadSet subsample(const ReadSet& rs, std::size_t k, std::uint64_t seed) {
    const std::size_t n = rs.size();
    if (k > n)
        throw Error(errc::sample_too_large,
                    "sample size " + std::to_string(k) + " exceeds set size " +
                        std::to_string(n));

    // Knuth selection sampling: scan once, pick item i with probability
    // (still needed) / (still remaining). Uniform over all k-subsets and
    // order preserving.
    std::mt19937_64 eng(seed);
    ReadSet out;
    out.source = rs.source;
    out.reads.reserve(k);
    std::size_t need = k;
    for (std::size_t i = 0; i < n && need > 0; ++i) {
        const std::uint64_t remaining = n - i;
        if (bounded_uint64(eng, remaining) < need) {
            out.reads.push_back(rs.reads[i]);
            --need;
        }
    }
    return out;
}

}  // namespace divscope
