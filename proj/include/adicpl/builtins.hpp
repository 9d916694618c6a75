#pragma once

// Built-in transition matrices used by the self test and the examples in
// the documentation.

#include <string>
#include <utility>
#include <vector>

#include "adicpl/errors.hpp"
#include "adicpl/sft.hpp"

namespace adicpl {

inline const std::vector<std::pair<std::string, std::vector<std::vector<int>>>>&
builtin_matrix_rows() {
    static const std::vector<std::pair<std::string, std::vector<std::vector<int>>>> table = {
        {"full2", {{1, 1}, {1, 1}}},
        {"full3", {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}},
        {"fib", {{1, 1}, {1, 0}}},
        {"k3", {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}},
        {"mix3", {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}}},
    };
    return table;
}

inline TransitionMatrix builtin_matrix(const std::string& name) {
    for (const auto& [n, rows] : builtin_matrix_rows())
        if (n == name) return TransitionMatrix::validate(rows);
    throw error(errc::bad_format, "unknown builtin matrix: " + name);
}

} // namespace adicpl
