#include "linear_algebra.hpp"

#include <utility>

namespace tsvar::detail {

RowEchelon rref(RationalMatrix m, std::size_t columns)
{
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < columns && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == m.size()) {
            continue;
        }
        std::swap(m[row], m[pivot]);
        mpq_class inv = 1 / m[row][col];
        for (auto& x : m[row]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) {
                continue;
            }
            mpq_class factor = m[r][col];
            for (std::size_t c = 0; c < columns; ++c) {
                m[r][c] -= factor * m[row][c];
            }
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

std::vector<bool> unit_vectors_in_row_space(const RationalMatrix& m, std::size_t columns)
{
    RowEchelon e = rref(m, columns);
    std::vector<bool> in_space(columns, false);
    // e_j is in the row space iff j is a pivot column whose pivot row has no
    // other nonzero entry.
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
        std::size_t nonzero = 0;
        for (std::size_t c = 0; c < columns; ++c) {
            if (e.reduced[r][c] != 0) {
                ++nonzero;
            }
        }
        if (nonzero == 1) {
            in_space[e.pivot_columns[r]] = true;
        }
    }
    return in_space;
}

} // namespace tsvar::detail
