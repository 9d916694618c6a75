#pragma once

#include <stdexcept>
#include <string>

namespace adicpl {

enum class errc {
    bad_size,
    bad_entry,
    zero_row,
    zero_column,
    reducible_matrix,
    condition_i_failed,
    empty_word,
    inadmissible_word,
    non_partition,
    follower_mismatch,
    matrix_mismatch,
    bad_index,
    bad_depth,
    bad_point,
    out_of_domain,
    division_by_zero,
    generation_failed,
    bad_format,
    check_failed,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::bad_size: return "bad_size";
        case errc::bad_entry: return "bad_entry";
        case errc::zero_row: return "zero_row";
        case errc::zero_column: return "zero_column";
        case errc::reducible_matrix: return "reducible_matrix";
        case errc::condition_i_failed: return "condition_i_failed";
        case errc::empty_word: return "empty_word";
        case errc::inadmissible_word: return "inadmissible_word";
        case errc::non_partition: return "non_partition";
        case errc::follower_mismatch: return "follower_mismatch";
        case errc::matrix_mismatch: return "matrix_mismatch";
        case errc::bad_index: return "bad_index";
        case errc::bad_depth: return "bad_depth";
        case errc::bad_point: return "bad_point";
        case errc::out_of_domain: return "out_of_domain";
        case errc::division_by_zero: return "division_by_zero";
        case errc::generation_failed: return "generation_failed";
        case errc::bad_format: return "bad_format";
        case errc::check_failed: return "check_failed";
    }
    return "unknown";
}

/// Exception carrying a machine-readable error code alongside the message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace adicpl
