#include "align.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "error.hpp"

namespace divscope {

void ScoringScheme::validate() const {
    if (match <= 0 || mismatch >= 0 || gap >= 0)
        throw Error(errc::invalid_argument,
                    "scoring scheme requires match > 0, mismatch < 0, gap < 0");
}

namespace {

inline int substitution(char x, char y, const ScoringScheme& s) {
    return (x == y && x != 'N') ? s.match : s.mismatch;
}

// Reused per thread; amplicon-sized reads keep this a few hundred KB.
thread_local std::vector<int32_t> dp_buffer;

}  // namespace

AlignmentResult sw_align(std::string_view a, std::string_view b,
                         const ScoringScheme& s) {
    s.validate();
    if (a.empty() || b.empty())
        throw Error(errc::empty_sequence, "cannot align an empty sequence");

    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t stride = nb + 1;

    std::vector<int32_t>& h = dp_buffer;
    h.assign((na + 1) * stride, 0);

    // Forward fill, tracking the first (lexicographically smallest (i, j))
    // cell that attains the global maximum.
    int32_t best = 0;
    std::size_t best_i = 0, best_j = 0;
    const int gap = s.gap;
    for (std::size_t i = 1; i <= na; ++i) {
        const char ca = a[i - 1];
        const int32_t* prev = h.data() + (i - 1) * stride;
        int32_t* cur = h.data() + i * stride;
        int32_t left_cell = 0;  // cur[0]
        for (std::size_t j = 1; j <= nb; ++j) {
            const int sub = (ca == b[j - 1] && ca != 'N') ? s.match : s.mismatch;
            int32_t v = prev[j - 1] + sub;
            const int32_t up = prev[j] + gap;
            const int32_t left = left_cell + gap;
            v = std::max(v, up);
            v = std::max(v, left);
            v = std::max(v, 0);
            cur[j] = v;
            left_cell = v;
            if (v > best) {
                best = v;
                best_i = i;
                best_j = j;
            }
        }
    }

    // Traceback. Preference diagonal > up > left among predecessors that
    // exactly account for the cell value; zero cells are walked through when
    // accounted for, so a net-zero prefix stays part of the alignment.
    AlignmentResult res;
    res.score = best;
    std::size_t i = best_i, j = best_j;
    int events = 0;
    while (i > 0 && j > 0) {
        const int32_t v = h[i * stride + j];
        const int sub = substitution(a[i - 1], b[j - 1], s);
        if (h[(i - 1) * stride + (j - 1)] + sub == v) {
            if (sub != s.match) ++events;
            --i;
            --j;
        } else if (h[(i - 1) * stride + j] + gap == v) {
            ++events;
            --i;
        } else if (h[i * stride + (j - 1)] + gap == v) {
            ++events;
            --j;
        } else {
            break;
        }
    }
    res.distance = events;
    res.a_begin = i;
    res.a_end = best_i;
    res.b_begin = j;
    res.b_end = best_j;
    return res;
}

int sw_distance(std::string_view a, std::string_view b, const ScoringScheme& s) {
    // Canonical operand order: tie-breaking in the traceback is not swap
    // invariant, ordering the operands makes the distance exactly symmetric.
    if (b < a) std::swap(a, b);
    return sw_align(a, b, s).distance;
}

}  // namespace divscope
