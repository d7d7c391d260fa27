#pragma once

#include <stdexcept>
#include <string>

namespace nr {

// Parameter outside its documented domain (bad range, invalid matrix file, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Operation that requires a nilpotent input was handed something else.
struct NotNilpotentError : std::runtime_error {
    explicit NotNilpotentError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative kernel failed to reach its tolerance within the iteration cap.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nr
