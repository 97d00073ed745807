#ifndef TESTS_SW_ORACLE_HPP
#define TESTS_SW_ORACLE_HPP

#include <cstddef>
#include <string_view>

// Deliberately naive local-alignment reference, written before and kept
// independent of the production kernel: full vector-of-vectors matrix,
// back-pointers recorded at fill time, forward walk of the recorded chain.
// Shares nothing with src/align.cpp beyond the documented semantics.
namespace swo {

struct OracleResult {
    int score = 0;
    int distance = 0;
    std::size_t a_begin = 0, a_end = 0;
    std::size_t b_begin = 0, b_end = 0;
};

OracleResult oracle_align(std::string_view a, std::string_view b,
                          int match = 1, int mismatch = -1, int gap = -2);

// symmetric variant (same canonical-order convention as the library)
int oracle_distance(std::string_view a, std::string_view b, int match = 1,
                    int mismatch = -1, int gap = -2);

}  // namespace swo

#endif
