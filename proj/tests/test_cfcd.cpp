#include "confcoh/cfcd.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace confcoh;

namespace {

std::shared_ptr<const FiniteTcdga> formal(Ring r, std::map<int, int> ranks, int N) {
    return std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{r, std::move(ranks)}, N));
}

std::shared_ptr<const FiniteTcdga> constant(const FiniteCdga& o, int N) {
    return std::make_shared<FiniteTcdga>(constant_tcdga(o, N));
}

UpSet top_only(int n) { return UpSet(n, {SetPartition::top(n)}); }

// Coefficients of prod_{i<n} (1 + i t).
std::vector<long> arnold(int n) {
    std::vector<long> p{1};
    for (int i = 1; i < n; ++i) {
        std::vector<long> q(p.size() + 1, 0);
        for (std::size_t j = 0; j < p.size(); ++j) {
            q[j] += p[j];
            q[j + 1] += i * p[j];
        }
        p = q;
    }
    return p;
}

}  // namespace

TEST(PhiA, Basics) {
    auto A = formal(Ring::Q, {{2, 1}}, 2);
    PhiA phi(A, 2, enumerate_partitions(2));
    int bot = phi.index_of(SetPartition::bottom(2)), top = phi.index_of(SetPartition::top(2));
    EXPECT_EQ(phi.at(bot).dim(4), 1);
    EXPECT_EQ(phi.at(bot).euler_characteristic(), 1);
    auto f = phi.map(bot, top);
    EXPECT_TRUE(f.at(4, phi.at(bot), phi.at(top)).is_zero());
    EXPECT_THROW(PhiA(A, 3, enumerate_partitions(3)), ValidationError);
}

TEST(PhiA, ConstantMaps) {
    auto A = constant(three_dim_cdga(), 3);
    PhiA phi(A, 2, enumerate_partitions(2));
    int bot = phi.index_of(SetPartition::bottom(2)), top = phi.index_of(SetPartition::top(2));
    const auto& B = phi.at(bot);
    const auto& T = phi.at(top);
    EXPECT_EQ(B.dim(0), 4);
    EXPECT_EQ(B.dim(1), 4);
    EXPECT_EQ(B.dim(2), 1);
    auto f = phi.map(bot, top);
    // degree 0 tuples in order (1,1), (1,c), (c,1), (c,c); images 1, c, c, 0
    auto m0 = f.at(0, B, T);
    EXPECT_EQ(phi.tuple(bot, 0, 3), (std::vector<int>{1, 1}));
    EXPECT_TRUE(m0.column(3).empty());
    EXPECT_EQ(m0.at(1, 2), 1);
    // (c, w) in degree 1 maps to c*w = 0
    auto m1 = f.at(1, B, T);
    for (int j = 0; j < B.dim(1); ++j)
        if (phi.tuple(bot, 1, j) == std::vector<int>{1, 2}) {
            EXPECT_TRUE(m1.column(j).empty());
        }
    auto F = phi_functor(A, 3);
    validate_functor(*F);
}

TEST(Cfcd, TwoPointsInThePlane) {
    auto A = formal(Ring::Q, {{2, 1}}, 2);
    auto cf = cf_complex(top_only(2), A);
    auto h = total_cohomology(cf, Ring::Q);
    EXPECT_EQ(h.rank(3), 1);
    EXPECT_EQ(h.rank(4), 1);
    EXPECT_EQ(h.total_rank(), 2);
    auto ch = characters(cf);
    EXPECT_EQ(ch.value(3, {2}), 1);
    EXPECT_EQ(ch.value(4, {2}), 1);
    EXPECT_EQ(ch.value(4, {1, 1}), 1);
    auto inv = invariants_dims(ch);
    EXPECT_EQ(inv[3], 1);
    EXPECT_EQ(inv[4], 1);
    // zero differential on the two cells
    EXPECT_EQ(cf.bar.total.dim(3), 1);
    EXPECT_EQ(cf.bar.total.dim(4), 1);
}

TEST(Cfcd, OddClassSwapSign) {
    auto A = formal(Ring::Q, {{1, 1}}, 2);
    auto cf = cf_complex(top_only(2), A);
    auto g = Permutation::transposition(2, 1, 2);
    auto f = equivariant_action(g, cf.bar);
    int empty = cf.bar.chain_id({});
    ASSERT_GE(empty, 0);
    int pos = cf.bar.position(empty, 2, 0);
    EXPECT_EQ(f.at(2, cf.bar.total, cf.bar.total).at(pos, pos), -1);
    auto sq = f.at(2, cf.bar.total, cf.bar.total) * f.at(2, cf.bar.total, cf.bar.total);
    EXPECT_EQ(sq, ExactMatrix::identity(Ring::Q, cf.bar.total.dim(2)));
}

TEST(Cfcd, PointAlgebra) {
    auto A = constant(point_cdga(), 4);
    for (int n = 2; n <= 4; ++n) {
        auto U = UpSet::full(n);
        EXPECT_EQ(total_cohomology(cf_complex(U, A), Ring::Q).total_rank(), 0);
        auto hd = total_cohomology(cd_complex(U, A), Ring::Q);
        EXPECT_EQ(hd.rank(0), 1);
        EXPECT_EQ(hd.total_rank(), 1);
    }
}

TEST(Cfcd, ArnoldOracle) {
    auto A = formal(Ring::Q, {{2, 1}}, 4);
    for (int n = 2; n <= 4; ++n) {
        auto h = total_cohomology(cf_complex(UpSet::full(n), A), Ring::Q);
        auto p = arnold(n);
        for (int j = 0; j < static_cast<int>(p.size()); ++j) EXPECT_EQ(h.rank(2 * n - j), p[j]) << n << " " << j;
        EXPECT_EQ(h.total_rank(), std::accumulate(p.begin(), p.end(), 0L));
    }
}

TEST(Cfcd, E1Page) {
    auto A = formal(Ring::Q, {{2, 1}}, 2);
    auto page = e1_page(cf_complex(top_only(2), A), Ring::Q);
    ASSERT_EQ(page.entries.size(), 2u);
    EXPECT_TRUE(page.entries[0].T.is_bottom());
    EXPECT_EQ(page.entries[0].p, 0);
    EXPECT_EQ(page.entries[0].graded.rank(4), 1);
    EXPECT_EQ(page.entries[1].p, 1);
    EXPECT_EQ(page.entries[1].graded.rank(3), 1);
    for (const auto& e : page.entries) EXPECT_EQ(e.graded, e.closed);
    auto cd = e1_page(cd_complex(top_only(2), A), Ring::Q);
    ASSERT_EQ(cd.entries.size(), 1u);
    EXPECT_TRUE(cd.entries[0].T.is_top());

    auto P = constant(point_cdga(), 4);
    auto full = e1_page(cf_complex(UpSet::full(4), P), Ring::Q);
    long chi = 0;
    for (const auto& e : full.entries) {
        EXPECT_EQ(e.graded, e.closed);
        chi += e.graded.euler_characteristic();
    }
    EXPECT_EQ(chi, 0);
}

TEST(Cfcd, ClosedFormMatchesComplex) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + trial % 3;
        std::map<int, int> ranks{{1 + trial % 2, 1}};
        if (trial % 3 == 2) ranks[2] = 1;
        GradedModule H{Ring::Q, ranks};
        auto A = std::make_shared<FiniteTcdga>(formal_tcdga(H, n));
        int k = 2 + static_cast<int>(rng() % (n - 1));
        auto U = UpSet::k_equals(n, k);
        auto cf = cf_complex(U, A);
        auto direct = total_cohomology(cf, Ring::Q);
        auto closed = iacyclic_closed_form(H, U, Ring::Q, true);
        EXPECT_EQ(direct, closed.cohomology) << n << " " << k;
        EXPECT_EQ(characters(cf), closed.characters) << n << " " << k;
        auto page = e1_page(cf, Ring::Q);
        for (int q = direct.groups.empty() ? 0 : direct.groups.front().degree;
             !direct.groups.empty() && q <= direct.groups.back().degree; ++q)
            EXPECT_EQ(page.total_rank(q), direct.rank(q));
    }
    auto zero = iacyclic_closed_form(GradedModule{Ring::Q, {}}, UpSet::full(3), Ring::Q, false);
    EXPECT_EQ(zero.cohomology.total_rank(), 0);
    auto three = iacyclic_closed_form(GradedModule{Ring::Q, {{2, 1}}}, UpSet::full(3), Ring::Q, false);
    EXPECT_EQ(three.cohomology.total_rank(), 6);
}

TEST(Cfcd, ShuffleModeDimensions) {
    auto base = constant_tcdga(three_dim_cdga(), 3);
    auto tw = std::make_shared<FiniteTcdga>(base);
    auto sh = std::make_shared<FiniteTcdga>(shuffle_forget(base));
    for (int n = 2; n <= 3; ++n) {
        auto U = UpSet::full(n);
        EXPECT_EQ(total_cohomology(cf_complex(U, tw), Ring::Q), total_cohomology(cf_complex(U, sh), Ring::Q));
        EXPECT_EQ(total_cohomology(cd_complex(U, tw), Ring::Q), total_cohomology(cd_complex(U, sh), Ring::Q));
    }
    EXPECT_THROW(characters(cf_complex(UpSet::full(2), sh)), ValidationError);
}

TEST(Cfcd, CharactersAreClassFunctions) {
    auto A = std::make_shared<FiniteTcdga>(constant_tcdga(three_dim_cdga(), 3));
    auto cf = cf_complex(UpSet::full(3), A);
    auto ch = characters(cf);
    auto h = total_cohomology(cf, Ring::Q);
    for (const auto& g : h.groups) EXPECT_EQ(ch.value(g.degree, {1, 1, 1}), g.free_rank);
    std::vector<int> im{0, 1, 2};
    GradedComplex CQ = cf.bar.total;
    do {
        Permutation g(im);
        auto tr = cyclic_trace(CQ, equivariant_action(g, cf.bar), g.order());
        for (int k = CQ.lo(); k <= CQ.hi(); ++k) EXPECT_EQ(tr[k - CQ.lo()], ch.value(k, g.cycle_type()));
    } while (std::next_permutation(im.begin(), im.end()));
}

TEST(Cfcd, IntegralTorsionFree) {
    auto A = formal(Ring::Z, {{1, 1}}, 4);
    for (int n = 2; n <= 4; ++n)
        for (int k = 2; k <= n; ++k) {
            auto h = total_cohomology(cf_complex(UpSet::k_equals(n, k), A), Ring::Z);
            EXPECT_FALSE(h.has_torsion());
            auto closed = iacyclic_closed_form(GradedModule{Ring::Z, {{1, 1}}}, UpSet::k_equals(n, k), Ring::Z, false);
            EXPECT_EQ(h, closed.cohomology);
        }
}
