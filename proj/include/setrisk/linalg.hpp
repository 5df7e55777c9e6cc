#pragma once

#include <optional>
#include <vector>

#include "setrisk/rational.hpp"

namespace setrisk::linalg {

using Matrix = std::vector<Vec>;  // row-major, every row of equal length

/// Rank of the row set (columns = cols).
std::size_t rank(const Matrix& rows, std::size_t cols);

/// Basis of {x : row . x = 0 for every row}, each basis vector made primitive.
Matrix nullspace(const Matrix& rows, std::size_t cols);

/// Some x with A x = b, or nullopt if inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b, std::size_t cols);

Matrix transpose(const Matrix& m, std::size_t cols);

}  // namespace setrisk::linalg
