#include "confcoh/ainfty.hpp"

#include <gtest/gtest.h>

using namespace confcoh;

TEST(AInfty, ThreeDimFixture) {
    auto fx = ainfty_three_dim();
    auto rep = hypothesis_check(fx.algebra, fx.ideal);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.ideal.rank(1), 1);
    EXPECT_EQ(rep.ideal.total_rank(), 1);
    EXPECT_EQ(rep.algebra.total_rank(), 1);  // the unit
    auto m = build_morphism(fx.algebra, fx.ideal);
    ASSERT_EQ(m.f.size(), 1u);
    EXPECT_EQ(m.f[0], (SparseVec{{2, Rational(1)}}));
    EXPECT_EQ(m.g[0], (SparseVec{{1, Rational(-1)}}));
    EXPECT_TRUE(m.eval({0, 0}).empty());
    EXPECT_TRUE(verify(m, 6).ok);
}

TEST(AInfty, HypothesisFailures) {
    auto fx = ainfty_three_dim();
    auto A = fx.algebra;
    A.d = ExactMatrix(Ring::Q, 3, 3);
    auto rep = hypothesis_check(A, fx.ideal);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.map_zero);
    EXPECT_THROW(build_morphism(A, fx.ideal), ValidationError);
    // I = A with H(A) != 0 fails, acyclic I = A passes vacuously
    EXPECT_FALSE(hypothesis_check(fx.algebra, IdealData{{0, 1, 2}}).ok());
    auto s = ainfty_sign_fixture();
    EXPECT_TRUE(hypothesis_check(s.algebra, IdealData{{0, 1, 2, 3}}).ok());
    // not an ideal
    EXPECT_FALSE(hypothesis_check(s.algebra, IdealData{{1}}).ok());
}

TEST(AInfty, SignFixtureAndCorruption) {
    auto fx = ainfty_sign_fixture();
    EXPECT_TRUE(fx.algebra.validate(false).ok());
    auto m = build_morphism(fx.algebra, fx.ideal);
    ASSERT_EQ(m.f.size(), 1u);
    EXPECT_EQ(m.f[0], (SparseVec{{1, Rational(1)}}));
    EXPECT_EQ(m.g[0], (SparseVec{{0, Rational(-1)}}));
    EXPECT_EQ(m.eval({0, 0}), (SparseVec{{2, Rational(-1)}}));
    EXPECT_TRUE(verify(m, 6).ok);
    auto bad = verify(corrupt_g(m), 6);
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.failed_arity, 2);
}

TEST(AInfty, ZeroMultiplication) {
    auto fx = ainfty_sign_fixture();
    auto A = fx.algebra;
    for (auto& row : A.mult)
        for (auto& v : row) v.clear();
    auto m = build_morphism(A, fx.ideal);
    for (int n = 2; n <= 4; ++n) EXPECT_TRUE(m.eval(std::vector<int>(n, 0)).empty());
    EXPECT_TRUE(verify(m, 4).ok);
}

TEST(AInftyProperty, RandomFixtures) {
    int nontrivial = 0;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto fx = random_ainfty_fixture(seed);
        ASSERT_TRUE(fx.algebra.validate(false).ok()) << fx.name;
        auto rep = hypothesis_check(fx.algebra, fx.ideal);
        ASSERT_TRUE(rep.ok()) << fx.name;
        auto m = build_morphism(fx.algebra, fx.ideal);
        auto v = verify(m, 4);
        EXPECT_TRUE(v.ok) << fx.name << " " << v.message;
        // f_1 picks representatives: classes map to themselves
        EXPECT_EQ(static_cast<int>(m.f.size()), rep.ideal.total_rank());
        bool products = false;
        for (std::size_t a = 0; a < m.f.size(); ++a)
            for (std::size_t b = 0; b < m.f.size(); ++b)
                products = products || !m.eval({static_cast<int>(a), static_cast<int>(b)}).empty();
        nontrivial += products;
        if (products) {
            EXPECT_FALSE(verify(corrupt_g(m), 2).ok) << fx.name;
        }
    }
    EXPECT_GE(nontrivial, 10);
}
