#ifndef DIVSCOPE_ALIGN_HPP
#define DIVSCOPE_ALIGN_HPP

#include <cstdint>
#include <string_view>

namespace divscope {

// Local alignment scoring. Unit-style defaults; degenerate schemes are
// rejected (match must reward, mismatch and gap must penalize).
struct ScoringScheme {
    int match = 1;
    int mismatch = -1;
    int gap = -2;  // linear, per gapped position

    void validate() const;
};

struct AlignmentResult {
    int score = 0;         // maximum cell of the Smith-Waterman matrix
    int distance = 0;      // mismatches + gapped positions on the traceback
    std::size_t a_begin = 0, a_end = 0;  // half-open aligned span in a
    std::size_t b_begin = 0, b_end = 0;  // half-open aligned span in b
};

// Smith-Waterman local alignment with a deterministic traceback.
//
// The score matrix follows the standard recurrence with cells floored at
// zero. The traceback starts at the maximum-score cell (smallest (i, j)
// lexicographically among ties) and at each cell follows the first
// predecessor, in the order diagonal, up (gap in b), left (gap in a), whose
// value exactly accounts for the cell, zero-valued cells included. It stops
// at the matrix border or when no predecessor accounts for the cell. 'N'
// never matches anything, itself included.
//
// Distance counts the mismatch and gap steps of that traceback, so it is 0
// exactly when the aligned regions are identical; a pair without any
// positive-scoring local alignment yields score 0, empty spans and
// distance 0.
AlignmentResult sw_align(std::string_view a, std::string_view b,
                         const ScoringScheme& s = {});

// Alignment distance with operands in a canonical order so that
// sw_distance(a, b) == sw_distance(b, a) exactly, ties in the traceback
// notwithstanding.
int sw_distance(std::string_view a, std::string_view b,
                const ScoringScheme& s = {});

}  // namespace divscope

#endif
