#ifndef DIVSCOPE_SEQIO_HPP
#define DIVSCOPE_SEQIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace divscope {

// A single identified sequence. The sequence is normalized on ingestion:
// uppercase, U mapped to T, alphabet restricted to {A, C, G, T, N}.
struct Read {
    std::string id;
    std::string sequence;

    std::size_t length() const noexcept { return sequence.size(); }
};

// Ordered, immutable-by-convention collection of reads. Index i here is the
// row/column index i of every matrix derived from this set.
struct ReadSet {
    std::vector<Read> reads;
    std::string source;

    std::size_t size() const noexcept { return reads.size(); }
    bool empty() const noexcept { return reads.empty(); }
    const Read& operator[](std::size_t i) const { return reads[i]; }

    std::vector<std::string> ids() const;
};

// FASTA ingestion. Records start with '>', the id is the header token before
// the first whitespace, sequence lines are concatenated and normalized.
// Errors: empty_input, invalid_character (id + 1-based base position),
// duplicate_id, bad_format (leading junk, empty id, empty record).
ReadSet parse_fasta(std::istream& in, const std::string& source = "<stream>");
ReadSet parse_fasta_string(std::string_view text,
                           const std::string& source = "<memory>");
ReadSet parse_fasta_file(const std::string& path);

void write_fasta(const ReadSet& rs, std::ostream& out);
void write_fasta_file(const ReadSet& rs, const std::string& path);

// Uniform sample of k reads without replacement, original order preserved.
// Selection sampling driven by the seed; identical (rs, k, seed) produce
// identical output everywhere. Throws sample_too_large when k > |rs|.
ReadSet subsample(const ReadSet& rs, std::size_t k, std::uint64_t seed);

}  // namespace divscope

#endif
