#ifndef DIVSCOPE_ERROR_HPP
#define DIVSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace divscope {

// Stable error codes, mirrored one-to-one by the C API status enum.
enum class errc {
    ok = 0,
    io_error,
    empty_input,
    invalid_character,
    duplicate_id,
    sample_too_large,
    empty_sequence,
    bad_format,
    truncated,
    not_symmetric,
    rank_too_large,
    zero_matrix,
    bad_gap,
    shape_mismatch,
    missing_label,
    join_error,
    bad_axis,
    invalid_argument,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::ok: return "ok";
        case errc::io_error: return "io_error";
        case errc::empty_input: return "empty_input";
        case errc::invalid_character: return "invalid_character";
        case errc::duplicate_id: return "duplicate_id";
        case errc::sample_too_large: return "sample_too_large";
        case errc::empty_sequence: return "empty_sequence";
        case errc::bad_format: return "bad_format";
        case errc::truncated: return "truncated";
        case errc::not_symmetric: return "not_symmetric";
        case errc::rank_too_large: return "rank_too_large";
        case errc::zero_matrix: return "zero_matrix";
        case errc::bad_gap: return "bad_gap";
        case errc::shape_mismatch: return "shape_mismatch";
        case errc::missing_label: return "missing_label";
        case errc::join_error: return "join_error";
        case errc::bad_axis: return "bad_axis";
        case errc::invalid_argument: return "invalid_argument";
        case errc::internal: return "internal";
    }
    return "unknown";
}

}  // namespace divscope

#endif
