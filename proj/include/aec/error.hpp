// error.hpp -- exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace aec {

// Malformed input text (DFA files, QFA JSON, words).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that violates a semantic requirement
// (completeness residual too large, mixed subspace, guard exceeded, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace aec
