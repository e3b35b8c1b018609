#pragma once

#include "confcoh/matrix.hpp"

namespace confcoh {

using DenseQ = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(DenseQ& M, int ncols) {
    std::vector<int> pivots;
    std::size_t row = 0;
    for (int col = 0; col < ncols && row < M.size(); ++col) {
        std::size_t p = M.size();
        for (std::size_t i = row; i < M.size(); ++i)
            if (M[i][col] != 0) {
                p = i;
                break;
            }
        if (p == M.size()) continue;
        std::swap(M[row], M[p]);
        Rational inv = 1 / M[row][col];
        for (int j = col; j < ncols; ++j) M[row][j] *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == row || M[i][col] == 0) continue;
            Rational f = M[i][col];
            for (int j = col; j < ncols; ++j)
                if (M[row][j] != 0) M[i][j] -= f * M[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

// Columns spanning the kernel of a (rows x ncols) matrix, as dense vectors of length ncols.
inline std::vector<std::vector<Rational>> nullspace(DenseQ M, int ncols) {
    auto piv = rref(M, ncols);
    std::vector<int> is_piv(ncols, -1);
    for (std::size_t r = 0; r < piv.size(); ++r) is_piv[piv[r]] = static_cast<int>(r);
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_piv[free] >= 0) continue;
        std::vector<Rational> v(ncols);
        v[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline DenseQ dense_of(const ExactMatrix& m) { return m.to_dense(); }

}  // namespace confcoh
