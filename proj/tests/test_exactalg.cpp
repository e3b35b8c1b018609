#include <gtest/gtest.h>

#include <random>

#include "confcoh/complex.hpp"

using namespace confcoh;

namespace {

ExactMatrix zmat(const std::vector<std::vector<long>>& rows, int ncols = -1) {
    DenseQ d;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (long x : r) row.emplace_back(x);
        d.push_back(row);
    }
    return ExactMatrix::from_dense(Ring::Z, d, ncols);
}

DenseZ product(const DenseZ& a, const DenseZ& b) {
    std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    DenseZ c(n, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < k; ++l) c[i][j] += a[i][l] * b[l][j];
    return c;
}

Integer det(DenseZ m) {
    // Bareiss
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

ExactMatrix random_int_matrix(std::mt19937& rng, int r, int c, int density_pct, int range) {
    std::uniform_int_distribution<int> pick(0, 99), val(-range, range);
    std::vector<std::tuple<int, int, Rational>> t;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (pick(rng) < density_pct) t.emplace_back(i, j, Rational(val(rng)));
    return ExactMatrix::from_triplets(Ring::Z, r, c, t);
}

}  // namespace

TEST(Smith, IdentityAndZero) {
    auto s = smith_normal_form(ExactMatrix::identity(Ring::Z, 2));
    EXPECT_EQ(s.diagonal, (std::vector<Integer>{1, 1}));
    auto z = smith_normal_form(ExactMatrix(Ring::Z, 3, 2));
    EXPECT_TRUE(z.diagonal.empty());
}

TEST(Smith, TwoByTwo) {
    auto m = zmat({{2, 4}, {6, 8}});
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.diagonal, (std::vector<Integer>{2, 4}));
    EXPECT_EQ(elementary_divisors(m), (std::vector<Integer>{2, 4}));
}

TEST(Smith, RandomContracts) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + trial % 6, c = 1 + (trial * 5) % 7;
        auto m = random_int_matrix(rng, r, c, 60, 6);
        auto s = smith_normal_form(m);
        DenseZ M(r, std::vector<Integer>(c, 0));
        for (int j = 0; j < c; ++j)
            for (const auto& [i, v] : m.column(j)) M[i][j] = v.get_num();
        EXPECT_EQ(product(product(s.U, M), s.V), s.S);
        EXPECT_EQ(abs(det(s.U)), 1);
        EXPECT_EQ(abs(det(s.V)), 1);
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (i != j) {
                    EXPECT_EQ(s.S[i][j], 0);
                }
        // sparse elimination agrees with the dense route
        std::vector<Integer> nonunit;
        for (const auto& d : s.diagonal)
            if (d != 1) nonunit.push_back(d);
        auto el = eliminate(m, true);
        EXPECT_EQ(el.rank, static_cast<int>(s.diagonal.size()));
        EXPECT_EQ(el.divisors, nonunit);
        EXPECT_EQ(rank(m.as_ring(Ring::Q)), static_cast<int>(s.diagonal.size()));
    }
}

TEST(Smith, OverflowFallsBackToBigIntegers) {
    Integer big("123456789012345678901234567890");
    std::vector<std::tuple<int, int, Rational>> t{{0, 0, Rational(big)}, {1, 1, Rational(big * 2)}, {0, 1, Rational(big)}};
    auto m = ExactMatrix::from_triplets(Ring::Z, 2, 2, t);
    auto el = eliminate(m, true);
    EXPECT_EQ(el.rank, 2);
    EXPECT_EQ(el.divisors, (std::vector<Integer>{big, big * 2}));
    // int64 products overflow during elimination
    auto m2 = zmat({{3037000500L, 2}, {3037000499L, 3037000500L}});
    auto s = smith_normal_form(m2);
    std::vector<Integer> nonunit;
    for (const auto& d : s.diagonal)
        if (d != 1) nonunit.push_back(d);
    EXPECT_EQ(eliminate(m2, true).divisors, nonunit);
}

TEST(Cohomology, ZeroDifferentials) {
    GradedComplex C(Ring::Z, 0, {2, 3, 1}, {});
    auto h = cohomology(C);
    EXPECT_EQ(h.rank(0), 2);
    EXPECT_EQ(h.rank(1), 3);
    EXPECT_EQ(h.rank(2), 1);
}

TEST(Cohomology, TimesTwo) {
    GradedComplex C(Ring::Z, 0, {1, 1}, {zmat({{2}}), ExactMatrix(Ring::Z, 0, 1)});
    auto h = cohomology(C);
    EXPECT_EQ(h.rank(0), 0);
    EXPECT_EQ(h.rank(1), 0);
    EXPECT_EQ(h.torsion(1), (std::vector<Integer>{2}));
    auto hq = cohomology(C.with_ring(Ring::Q));
    EXPECT_TRUE(hq.groups.empty());
}

TEST(Cohomology, IdentityIsAcyclic) {
    GradedComplex C(Ring::Z, 0, {1, 1}, {zmat({{1}}), ExactMatrix(Ring::Z, 0, 1)});
    EXPECT_TRUE(cohomology(C).groups.empty());
}

TEST(Cohomology, RejectsNonComplex) {
    EXPECT_THROW(GradedComplex(Ring::Z, 0, {1, 1, 1}, {zmat({{1}}), zmat({{1}}), ExactMatrix(Ring::Z, 0, 1)}),
                 ValidationError);
}

namespace {

// Random three-term complex; rows of d1 are drawn from the left kernel of d0.
GradedComplex random_complex(std::mt19937& rng, Ring ring) {
    std::uniform_int_distribution<int> dim(1, 5), val(-3, 3);
    int a = dim(rng), b = dim(rng) + 1, c = dim(rng);
    auto d0 = random_int_matrix(rng, b, a, 50, 3);
    DenseQ dt = d0.transpose().to_dense();
    auto ker = nullspace(dt, b);  // vectors y with y^T d0 = 0
    std::vector<std::tuple<int, int, Rational>> t;
    for (int i = 0; i < c; ++i) {
        std::vector<Rational> row(b);
        for (const auto& k : ker) {
            Integer l = 1;
            for (const auto& x : k) l = lcm(l, Integer(x.get_den()));
            int coef = val(rng);
            for (int j = 0; j < b; ++j) row[j] += coef * k[j] * l;
        }
        for (int j = 0; j < b; ++j)
            if (row[j] != 0) t.emplace_back(i, j, row[j]);
    }
    auto d1 = ExactMatrix::from_triplets(Ring::Z, c, b, t);
    return GradedComplex(ring, 0, {a, b, c}, {d0, d1, ExactMatrix(Ring::Z, 0, c)});
}

}  // namespace

TEST(Cohomology, IntegralVersusRationalAndEuler) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto C = random_complex(rng, Ring::Z);
        auto hz = cohomology(C);
        auto hq = cohomology(C.with_ring(Ring::Q));
        EXPECT_EQ(hz.rationalized(), hq);
        EXPECT_EQ(C.euler_characteristic(), hq.euler_characteristic());
        for (const auto& g : hz.groups)
            for (std::size_t i = 0; i + 1 < g.torsion.size(); ++i) EXPECT_EQ(g.torsion[i + 1] % g.torsion[i], 0);
    }
}

TEST(InducedMap, IdentityAndHomotopy) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto C = random_complex(rng, Ring::Q);
        auto id = induced_map_on_cohomology(C, C, identity_map(C));
        auto h = cohomology(C);
        for (int k = 0; k <= 2; ++k) {
            ASSERT_EQ(static_cast<int>(id[k].size()), h.rank(k));
            for (std::size_t i = 0; i < id[k].size(); ++i)
                for (std::size_t j = 0; j < id[k].size(); ++j) EXPECT_EQ(id[k][i][j], i == j ? 1 : 0);
        }
        // f = d h + h d for a random h of degree -1
        std::vector<ExactMatrix> hs;  // hs[k]: C^k -> C^{k-1}
        hs.emplace_back(Ring::Q, 0, C.dim(0));
        for (int k = 1; k <= 2; ++k) hs.push_back(random_int_matrix(rng, C.dim(k - 1), C.dim(k), 50, 2).as_ring(Ring::Q));
        ChainMap f{0, {}};
        for (int k = 0; k <= 2; ++k) {
            ExactMatrix term(Ring::Q, C.dim(k), C.dim(k));
            if (k >= 1) term = term + C.diff(k - 1) * hs[k];
            if (k + 1 <= 2) term = term + hs[k + 1] * C.diff(k);
            f.maps.push_back(term);
        }
        for (const auto& t : trace_on_cohomology(C, f)) EXPECT_EQ(t, 0);
        for (const auto& m : induced_map_on_cohomology(C, C, f))
            for (const auto& row : m)
                for (const auto& x : row) EXPECT_EQ(x, 0);
    }
}

TEST(InducedMap, SwapTraceAndNonChainMap) {
    GradedComplex C(Ring::Q, 0, {2}, {});
    ChainMap swap{0, {zmat({{0, 1}, {1, 0}}).as_ring(Ring::Q)}};
    EXPECT_EQ(trace_on_cohomology(C, swap)[0], 0);
    EXPECT_EQ(cyclic_trace(C, swap, 2)[0], 0);
    GradedComplex D(Ring::Q, 0, {1, 1}, {zmat({{1}}).as_ring(Ring::Q), ExactMatrix(Ring::Q, 0, 1)});
    ChainMap bad{0, {zmat({{1}}).as_ring(Ring::Q), zmat({{2}}).as_ring(Ring::Q)}};
    EXPECT_THROW(induced_map_on_cohomology(D, D, bad), ValidationError);
}

TEST(CyclicTrace, MatchesDirectTraceOnPermutationComplex) {
    // Cyclic rotation of order 6 on Q^6 in degree 0 mapping onto Q^6 in degree 1 by a
    // rank-deficient equivariant map; compare both trace routes for every power.
    int n = 6;
    std::vector<std::tuple<int, int, Rational>> rot, dd;
    for (int i = 0; i < n; ++i) {
        rot.emplace_back((i + 1) % n, i, Rational(1));
        dd.emplace_back(i, i, Rational(1));
        dd.emplace_back((i + 3) % n, i, Rational(1));
    }
    auto g = ExactMatrix::from_triplets(Ring::Q, n, n, rot);
    auto d = ExactMatrix::from_triplets(Ring::Q, n, n, dd);
    GradedComplex C(Ring::Q, 0, {n, n}, {d, ExactMatrix(Ring::Q, 0, n)});
    ExactMatrix power = ExactMatrix::identity(Ring::Q, n);
    for (int e = 1; e <= n; ++e) {
        power = g * power;
        ChainMap f{0, {power, power}};
        int order = n / std::gcd(n, e);
        EXPECT_EQ(trace_on_cohomology(C, f), cyclic_trace(C, f, order)) << "power " << e;
    }
}
