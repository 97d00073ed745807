#ifndef DIVSCOPE_TEXTIO_HPP
#define DIVSCOPE_TEXTIO_HPP

#include <charconv>
#include <string>

namespace divscope {

// Shortest decimal form that parses back to the same bits; identical input
// bits give identical text, which the byte-level determinism checks rely on.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;  // 64 bytes always suffice for a double
    return std::string(buf, end);
}

}  // namespace divscope

#endif
