#ifndef DIVSCOPE_ASSIGN_HPP
#define DIVSCOPE_ASSIGN_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "distmat.hpp"
#include "seqio.hpp"

namespace divscope {

// Reference reads plus their species labels (every reference must be
// labeled; extra labels are ignored).
struct ReferenceDB {
    ReadSet reads;
    std::vector<std::string> species;  // parallel to reads
};

enum class AssignStatus { assigned, ambiguous, unknown };

const char* to_string(AssignStatus s);

struct AssignmentResult {
    std::string read_id;
    AssignStatus status = AssignStatus::unknown;
    std::string species;  // empty unless assigned
    std::size_t support = 0;  // references within the gap
    std::vector<std::string> matched_species;  // distinct, sorted
};

// Integer distance cutoff for a read/reference pair under homology gap g:
// floor((1 - g) * min(len_q, len_r)), with a tiny guard so exact products
// like 0.1 * 50 land on the intended integer. g must lie in (0, 1].
long gap_threshold(double gap, std::size_t len_q, std::size_t len_r);

// Classify every query against the reference set using a precomputed
// query x reference distance matrix. A reference "matches" when its
// distance is <= the pairwise threshold. Exactly one matched species =>
// assigned; two or more => ambiguous; none => unknown.
std::vector<AssignmentResult> classify(const ReadSet& queries,
                                       const ReferenceDB& refs,
                                       const DistanceMatrix& cross,
                                       double gap);

// labels TSV: `ref_id<TAB>species` per line, no header.
std::map<std::string, std::string> read_labels_tsv(const std::string& path);

// Pair reads with their labels; throws missing_label naming the first
// reference without one.
ReferenceDB make_reference_db(ReadSet reads,
                              const std::map<std::string, std::string>& labels);

// assignment TSV: header `read_id status species support`.
void write_assignments_tsv(const std::vector<AssignmentResult>& rows,
                           const std::string& path);
std::vector<AssignmentResult> read_assignments_tsv(const std::string& path);

// Join assignments onto an embedding id order for plotting: one label per
// embedding row. Ambiguous and unknown reads get the reserved labels
// `__ambiguous__` / `__unknown__`. Both inputs must be in the same read
// order; any id that does not line up raises join_error.
std::vector<std::string> color_table(
    const std::vector<std::string>& embedding_ids,
    const std::vector<AssignmentResult>& rows);

}  // namespace divscope

#endif
