#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace tsvar::detail {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

struct RowEchelon {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank() const { return pivot_columns.size(); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
RowEchelon rref(RationalMatrix m, std::size_t columns);

/// For each column j, whether the unit vector e_j lies in the row space.
/// Equivalently: whether every null-space vector has a zero j-th entry.
std::vector<bool> unit_vectors_in_row_space(const RationalMatrix& m, std::size_t columns);

} // namespace tsvar::detail
