#pragma once

#include <string>

#include "nr/complex_matrix.hpp"

namespace nr {

// Matrix interchange format: {"dim": n, "re": n x n array, "im": n x n array}.
// Throws DomainError with a descriptive message on malformed input.
ComplexMatrix load_matrix_json(const std::string& path);
ComplexMatrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const ComplexMatrix& a);

// Write-to-temp-then-rename so failures never leave partial files behind.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace nr
