#pragma once

#include "confcoh/exact.hpp"

#include <algorithm>
#include <tuple>

namespace confcoh {

// Sparse matrix stored by columns. Entries are rationals; the ring tag records
// whether the matrix is meant to live over Z (all entries integral).
class ExactMatrix {
public:
    using Column = std::vector<std::pair<int, Rational>>;

    ExactMatrix() = default;
    ExactMatrix(Ring ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols), columns_(cols) {
        require(rows >= 0 && cols >= 0, "negative matrix shape");
    }

    static ExactMatrix from_columns(Ring ring, int rows, const std::vector<SparseVec>& cols) {
        ExactMatrix m(ring, rows, static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(static_cast<int>(c), cols[c]);
        return m;
    }

    static ExactMatrix from_triplets(Ring ring, int rows, int cols,
                                     const std::vector<std::tuple<int, int, Rational>>& trips) {
        std::vector<SparseVec> acc(cols);
        for (const auto& [r, c, v] : trips) {
            require(r >= 0 && r < rows && c >= 0 && c < cols, "triplet out of range");
            add_term(acc[c], r, v);
        }
        return from_columns(ring, rows, acc);
    }

    static ExactMatrix identity(Ring ring, int n) {
        ExactMatrix m(ring, n, n);
        for (int i = 0; i < n; ++i) m.columns_[i].push_back({i, Rational(1)});
        return m;
    }

    static ExactMatrix from_dense(Ring ring, const std::vector<std::vector<Rational>>& rows, int ncols = -1) {
        int nr = static_cast<int>(rows.size());
        int nc = ncols >= 0 ? ncols : (nr ? static_cast<int>(rows[0].size()) : 0);
        ExactMatrix m(ring, nr, nc);
        for (int c = 0; c < nc; ++c)
            for (int r = 0; r < nr; ++r)
                if (rows[r][c] != 0) m.columns_[c].push_back({r, rows[r][c]});
        m.check_ring();
        return m;
    }

    Ring ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Column& column(int c) const { return columns_[c]; }

    void set_column(int c, const SparseVec& v) {
        Column col;
        col.reserve(v.size());
        for (const auto& [r, x] : v) {
            require(r >= 0 && r < rows_, "column entry out of range");
            if (x != 0) {
                require(ring_ == Ring::Q || is_integral(x), "non-integral entry in integer matrix");
                col.push_back({r, x});
            }
        }
        columns_[c] = std::move(col);
    }

    SparseVec column_vec(int c) const {
        SparseVec v;
        for (const auto& [r, x] : columns_[c]) v.emplace(r, x);
        return v;
    }

    Rational at(int r, int c) const {
        const auto& col = columns_[c];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const auto& e, int key) { return e.first < key; });
        if (it != col.end() && it->first == r) return it->second;
        return Rational(0);
    }

    std::size_t nnz() const {
        std::size_t s = 0;
        for (const auto& c : columns_) s += c.size();
        return s;
    }

    bool is_zero() const { return nnz() == 0; }

    SparseVec apply(const SparseVec& x) const {
        SparseVec y;
        for (const auto& [c, v] : x) {
            require(c >= 0 && c < cols_, "vector index out of range");
            for (const auto& [r, a] : columns_[c]) add_term(y, r, a * v);
        }
        return y;
    }

    ExactMatrix transpose() const {
        std::vector<SparseVec> t(rows_);
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : columns_[c]) t[r].emplace(c, v);
        return from_columns(ring_, cols_, t);
    }

    std::vector<std::vector<Rational>> to_dense() const {
        std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
        for (int c = 0; c < cols_; ++c)
            for (const auto& [r, v] : columns_[c]) d[r][c] = v;
        return d;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        require(a.cols_ == b.rows_, "matrix product shape mismatch");
        Ring ring = (a.ring_ == Ring::Q || b.ring_ == Ring::Q) ? Ring::Q : Ring::Z;
        ExactMatrix m(ring, a.rows_, b.cols_);
        for (int c = 0; c < b.cols_; ++c) m.set_column(c, a.apply(b.column_vec(c)));
        return m;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix sum shape mismatch");
        Ring ring = (a.ring_ == Ring::Q || b.ring_ == Ring::Q) ? Ring::Q : Ring::Z;
        ExactMatrix m(ring, a.rows_, a.cols_);
        for (int c = 0; c < a.cols_; ++c) {
            SparseVec v = a.column_vec(c);
            axpy(v, Rational(1), b.column_vec(c));
            m.set_column(c, v);
        }
        return m;
    }

    ExactMatrix scaled(const Rational& s) const {
        ExactMatrix m(s == 0 || is_integral(s) ? ring_ : Ring::Q, rows_, cols_);
        if (s == 0) return m;
        for (int c = 0; c < cols_; ++c) {
            m.columns_[c] = columns_[c];
            for (auto& e : m.columns_[c]) e.second *= s;
        }
        return m;
    }

    ExactMatrix as_ring(Ring r) const {
        ExactMatrix m = *this;
        m.ring_ = r;
        m.check_ring();
        return m;
    }

    ExactMatrix select_columns(const std::vector<int>& idx) const {
        ExactMatrix m(ring_, rows_, static_cast<int>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) m.columns_[i] = columns_[idx[i]];
        return m;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.columns_ == b.columns_;
    }

private:
    void check_ring() const {
        if (ring_ != Ring::Z) return;
        for (const auto& col : columns_)
            for (const auto& e : col) require(is_integral(e.second), "non-integral entry in integer matrix");
    }

    Ring ring_ = Ring::Q;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Column> columns_;
};

}  // namespace confcoh
