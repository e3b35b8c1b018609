#pragma once

#include "confcoh/matrix.hpp"

#include <cstdlib>
#include <numeric>
#include <queue>

namespace confcoh {

using DenseZ = std::vector<std::vector<Integer>>;

struct SmithResult {
    DenseZ S;
    DenseZ U;  // rows x rows, unimodular
    DenseZ V;  // cols x cols, unimodular
    std::vector<Integer> diagonal;  // nonzero diagonal entries, each dividing the next
};

namespace detail {

inline DenseZ identity_z(std::size_t n) {
    DenseZ I(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// In-place Smith form of a dense integer matrix. U and V are tracked only when non-null.
inline std::vector<Integer> smith_in_place(DenseZ& M, DenseZ* U, DenseZ* V) {
    const std::size_t r = M.size();
    const std::size_t c = r ? M[0].size() : 0;
    std::vector<Integer> diag;
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        std::swap(M[a], M[b]);
        if (U) std::swap((*U)[a], (*U)[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : M) std::swap(row[a], row[b]);
        if (V)
            for (auto& row : *V) std::swap(row[a], row[b]);
    };
    // row_i -= q * row_t
    auto row_op = [&](std::size_t i, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t j = 0; j < c; ++j)
            if (M[t][j] != 0) M[i][j] -= q * M[t][j];
        if (U)
            for (std::size_t j = 0; j < r; ++j)
                if ((*U)[t][j] != 0) (*U)[i][j] -= q * (*U)[t][j];
    };
    auto col_op = [&](std::size_t j, std::size_t t, const Integer& q) {
        if (q == 0) return;
        for (std::size_t i = 0; i < r; ++i)
            if (M[i][t] != 0) M[i][j] -= q * M[i][t];
        if (V)
            for (std::size_t i = 0; i < c; ++i)
                if ((*V)[i][t] != 0) (*V)[i][j] -= q * (*V)[i][t];
    };

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        std::size_t bi = r, bj = c;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (M[i][j] != 0 && (bi == r || abs(M[i][j]) < abs(M[bi][bj]))) {
                    bi = i;
                    bj = j;
                }
        if (bi == r) break;
        swap_rows(t, bi);
        swap_cols(t, bj);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (M[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M[i][t].get_mpz_t(), M[t][t].get_mpz_t());
                row_op(i, t, q);
                if (M[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (M[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), M[t][j].get_mpz_t(), M[t][t].get_mpz_t());
                col_op(j, t, q);
                if (M[t][j] != 0) clean = false;
            }
            if (!clean) {
                std::size_t mi = t, mj = t;
                for (std::size_t i = t + 1; i < r; ++i)
                    if (M[i][t] != 0 && abs(M[i][t]) < abs(M[mi][mj])) mi = i, mj = t;
                for (std::size_t j = t + 1; j < c; ++j)
                    if (M[t][j] != 0 && abs(M[t][j]) < abs(M[mi][mj])) mi = t, mj = j;
                swap_rows(t, mi);
                swap_cols(t, mj);
                continue;
            }
            std::size_t bad = r;
            for (std::size_t i = t + 1; i < r && bad == r; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (M[i][j] % M[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == r) break;
            row_op(t, bad, Integer(-1));
        }
        if (M[t][t] < 0) {
            for (auto& x : M[t]) x = -x;
            if (U)
                for (auto& x : (*U)[t]) x = -x;
        }
        diag.push_back(M[t][t]);
    }
    return diag;
}

// Rank of a dense integer matrix by fraction-free elimination.
inline int dense_rank(DenseZ M) {
    const std::size_t r = M.size();
    const std::size_t c = r ? M[0].size() : 0;
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t p = r;
        for (std::size_t i = row; i < r; ++i)
            if (M[i][col] != 0) {
                p = i;
                break;
            }
        if (p == r) continue;
        std::swap(M[row], M[p]);
        for (std::size_t i = row + 1; i < r; ++i) {
            if (M[i][col] == 0) continue;
            Integer a = M[row][col], b = M[i][col];
            Integer g = gcd(a, b);
            Integer fa = a / g, fb = b / g;
            Integer content = 0;
            for (std::size_t j = col; j < c; ++j) {
                M[i][j] = fa * M[i][j] - fb * M[row][j];
                content = gcd(content, M[i][j]);
            }
            if (content > 1)
                for (std::size_t j = col; j < c; ++j) M[i][j] /= content;
        }
        ++row;
        ++rank;
    }
    return rank;
}

struct Overflow {};

struct I64 {
    using T = std::int64_t;
    static T mul_sub(T a, T b, T c) {  // a - b*c
        T p, s;
        if (__builtin_mul_overflow(b, c, &p) || __builtin_sub_overflow(a, p, &s)) throw Overflow{};
        return s;
    }
    static bool is_unit(T a) { return a == 1 || a == -1; }
    static Integer to_z(T a) { return Integer(static_cast<long>(a)); }
    static T from_z(const Integer& z) {
        if (!z.fits_slong_p()) throw Overflow{};
        return z.get_si();
    }
};

struct BigZ {
    using T = Integer;
    static T mul_sub(const T& a, const T& b, const T& c) { return a - b * c; }
    static bool is_unit(const T& a) { return a == 1 || a == -1; }
    static Integer to_z(const T& a) { return a; }
    static T from_z(const Integer& z) { return z; }
};

struct EliminationResult {
    int rank = 0;
    std::vector<Integer> divisors;  // non-unit elementary divisors, ascending
};

template <class Ops>
EliminationResult eliminate_impl(int rows, const std::vector<std::vector<std::pair<int, Integer>>>& input,
                                 bool want_divisors) {
    using T = typename Ops::T;
    using Vec = std::vector<std::pair<int, T>>;
    std::vector<Vec> pivots;
    std::vector<int> pivot_row;
    std::vector<int> order_of_row(rows, -1);
    std::vector<T> acc(rows, T(0));
    std::vector<char> touched(rows, 0), queued(rows, 0);

    auto reduce = [&](const Vec& v) -> Vec {
        std::vector<int> touched_list;
        std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
        auto touch = [&](int row) {
            if (!touched[row]) {
                touched[row] = 1;
                touched_list.push_back(row);
            }
            int k = order_of_row[row];
            if (k >= 0 && !queued[row]) {
                queued[row] = 1;
                heap.push(k);
            }
        };
        for (const auto& [row, x] : v) {
            acc[row] = x;
            touch(row);
        }
        while (!heap.empty()) {
            int k = heap.top();
            heap.pop();
            int pr = pivot_row[k];
            queued[pr] = 0;
            if (acc[pr] == 0) continue;
            T coef = acc[pr];
            const Vec& p = pivots[k];
            T unit = T(0);
            for (const auto& e : p)
                if (e.first == pr) unit = e.second;
            if (unit == -1) coef = -coef;
            for (const auto& [row, x] : p) {
                acc[row] = Ops::mul_sub(acc[row], coef, x);
                if (row != pr) touch(row);
                else queued[row] = 0;
            }
        }
        std::sort(touched_list.begin(), touched_list.end());
        Vec out;
        for (int row : touched_list) {
            if (acc[row] != 0) out.push_back({row, acc[row]});
            acc[row] = T(0);
            touched[row] = 0;
            queued[row] = 0;
        }
        return out;
    };

    auto try_register = [&](const Vec& v) -> bool {
        for (const auto& [row, x] : v)
            if (Ops::is_unit(x)) {
                order_of_row[row] = static_cast<int>(pivots.size());
                pivot_row.push_back(row);
                pivots.push_back(v);
                return true;
            }
        return false;
    };

    std::vector<std::size_t> order(input.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return input[a].size() < input[b].size(); });

    std::vector<Vec> deferred;
    for (std::size_t idx : order) {
        Vec v;
        v.reserve(input[idx].size());
        for (const auto& [row, x] : input[idx]) v.push_back({row, Ops::from_z(x)});
        Vec red = reduce(v);
        if (red.empty()) continue;
        if (!try_register(red)) deferred.push_back(std::move(red));
    }
    bool progress = true;
    while (progress && !deferred.empty()) {
        progress = false;
        std::vector<Vec> next;
        for (auto& v : deferred) {
            Vec red = reduce(v);
            if (red.empty()) continue;
            if (try_register(red)) progress = true;
            else next.push_back(std::move(red));
        }
        deferred = std::move(next);
    }
    // Deferred vectors may still meet pivots registered after their last pass.
    for (auto& v : deferred) v = reduce(v);

    EliminationResult res;
    res.rank = static_cast<int>(pivots.size());
    if (deferred.empty()) return res;
    std::vector<int> support;
    for (const auto& v : deferred)
        for (const auto& e : v) support.push_back(e.first);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    DenseZ D(support.size(), std::vector<Integer>(deferred.size(), 0));
    for (std::size_t j = 0; j < deferred.size(); ++j)
        for (const auto& [row, x] : deferred[j]) {
            auto pos = std::lower_bound(support.begin(), support.end(), row) - support.begin();
            D[pos][j] = Ops::to_z(x);
        }
    if (!want_divisors) {
        res.rank += dense_rank(std::move(D));
        return res;
    }
    auto diag = smith_in_place(D, nullptr, nullptr);
    for (const auto& d : diag) {
        ++res.rank;
        if (d != 1) res.divisors.push_back(d);
    }
    return res;
}

inline std::vector<std::vector<std::pair<int, Integer>>> integral_columns(const ExactMatrix& m) {
    std::vector<std::vector<std::pair<int, Integer>>> cols(m.cols());
    for (int c = 0; c < m.cols(); ++c) {
        Integer l = 1;
        for (const auto& e : m.column(c)) l = lcm(l, Integer(e.second.get_den()));
        for (const auto& e : m.column(c)) {
            Rational s = e.second * l;
            cols[c].push_back({e.first, s.get_num()});
        }
    }
    return cols;
}

}  // namespace detail

// Rank and non-unit elementary divisors. Over Q only the rank is meaningful.
inline detail::EliminationResult eliminate(const ExactMatrix& m, bool want_divisors) {
    auto cols = detail::integral_columns(m);
    try {
        return detail::eliminate_impl<detail::I64>(m.rows(), cols, want_divisors);
    } catch (const detail::Overflow&) {
        return detail::eliminate_impl<detail::BigZ>(m.rows(), cols, want_divisors);
    }
}

inline int rank(const ExactMatrix& m) { return eliminate(m, false).rank; }

inline std::vector<Integer> elementary_divisors(const ExactMatrix& m) {
    require(m.ring() == Ring::Z, "elementary divisors need an integer matrix");
    return eliminate(m, true).divisors;
}

inline SmithResult smith_normal_form(const ExactMatrix& m) {
    require(m.ring() == Ring::Z, "Smith form needs an integer matrix");
    SmithResult res;
    res.S = DenseZ(m.rows(), std::vector<Integer>(m.cols(), 0));
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c)) res.S[r][c] = v.get_num();
    res.U = detail::identity_z(m.rows());
    res.V = detail::identity_z(m.cols());
    res.diagonal = detail::smith_in_place(res.S, &res.U, &res.V);
    return res;
}

}  // namespace confcoh
