#include "confcoh/bar.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace confcoh;

namespace {

FinitePoset point() { return FinitePoset::chain_poset(1); }

FinitePoset pi(int n) { return FinitePoset::of_partitions(enumerate_partitions(n)); }

// Pi_n without its bottom element.
std::vector<char> above_bottom(const FinitePoset& P) {
    std::vector<char> in(P.size(), 1);
    in[P.bottom()] = 0;
    return in;
}

}  // namespace

TEST(OrderComplex, Variants) {
    auto h = cohomology(order_complex(point(), OrderVariant::HatCheck).complex);
    EXPECT_EQ(h.rank(0), 1);
    EXPECT_EQ(h.total_rank(), 1);
    auto h2 = cohomology(order_complex(pi(2), OrderVariant::HatCheck).complex);
    EXPECT_EQ(h2.rank(1), 1);
    EXPECT_EQ(h2.total_rank(), 1);
    auto h4 = cohomology(order_complex(pi(4), OrderVariant::HatCheck).complex);
    EXPECT_EQ(h4.rank(3), 6);
    EXPECT_EQ(h4.total_rank(), 6);
    EXPECT_FALSE(h4.has_torsion());
    auto all = enumerate_partitions(4);
    std::vector<int> idx;
    for (int i = 1; i < static_cast<int>(all.size()); ++i) idx.push_back(i);
    auto cone = cohomology(order_complex(pi(4).subposet(idx), OrderVariant::Plain).complex);
    EXPECT_EQ(cone.total_rank(), 0);
    EXPECT_THROW(order_complex(pi(3).subposet({1, 2}), OrderVariant::Hat),
                 ValidationError);
}

TEST(OrderComplex, PartitionLatticeRanks) {
    int fact = 1;
    for (int n = 2; n <= 5; ++n) {
        fact *= (n - 1);
        auto h = cohomology(order_complex(pi(n), OrderVariant::HatCheck).complex);
        EXPECT_EQ(h.rank(n - 1), fact);
        EXPECT_EQ(h.total_rank(), fact);
        EXPECT_FALSE(h.has_torsion());
    }
}

TEST(OrderComplex, Smash) {
    EXPECT_TRUE(smash_check(point(), point()));
    EXPECT_TRUE(smash_check(pi(2), pi(2)));
    auto lhs = cohomology(order_complex(FinitePoset::product(pi(2), pi(2)), OrderVariant::HatCheck, Ring::Q).complex);
    EXPECT_EQ(lhs.rank(2), 1);
    EXPECT_TRUE(smash_check(pi(3), pi(2)));
    auto l32 = cohomology(order_complex(FinitePoset::product(pi(3), pi(2)), OrderVariant::HatCheck, Ring::Q).complex);
    EXPECT_EQ(l32.rank(3), 2);
    // interval below 123|456 in the 3-equals closure is a product of two 2-chains
    auto J = join_closure(UpSet::k_equals(6, 3), true);
    auto iv = lower_interval(J, SetPartition::from_blocks(6, {{1, 2, 3}, {4, 5, 6}}));
    auto a = cohomology(order_complex(FinitePoset::of_partitions(iv), OrderVariant::HatCheck, Ring::Q).complex);
    auto b = cohomology(order_complex(FinitePoset::product(FinitePoset::chain_poset(2), FinitePoset::chain_poset(2)),
                                      OrderVariant::HatCheck, Ring::Q)
                            .complex);
    EXPECT_EQ(a, b);
}

TEST(OrderComplex, InducedActionIsAChainMap) {
    auto all = enumerate_partitions(4);
    auto P = FinitePoset::of_partitions(all);
    auto oc = order_complex(P, OrderVariant::HatCheck, Ring::Q);
    auto g = Permutation::of_cycle_type({2, 1, 1});
    std::vector<int> perm;
    for (const auto& x : all) perm.push_back(static_cast<int>(std::find(all.begin(), all.end(), act(g, x)) - all.begin()));
    auto f = oc.induced(P, perm);
    validate_chain_map(oc.complex, oc.complex, f);
    // Lie(4) twisted by sign: trace of a transposition on H^3 is 0
    auto tr = trace_on_cohomology(oc.complex, f);
    EXPECT_EQ(tr[3 - oc.complex.lo()], 0);
}

TEST(BarComplex, ConstantCoefficients) {
    for (int n = 2; n <= 4; ++n) {
        auto P = pi(n);
        auto F = constant_functor(P, Ring::Q);
        auto in = above_bottom(P);
        auto B = bar_complex(in, F, BarFlavor::B, Ring::Q);
        auto h = cohomology(B.total);
        EXPECT_EQ(h.rank(0), 1);
        EXPECT_EQ(h.total_rank(), 1);
        auto Bt = bar_complex(in, F, BarFlavor::Btilde, Ring::Q);
        EXPECT_EQ(cohomology(Bt.total).total_rank(), 0);
        // SES bookkeeping: chi(Btilde) = chi(Phi(0)) - chi(B)
        EXPECT_EQ(Bt.total.euler_characteristic(), F->at(P.bottom()).euler_characteristic() - B.total.euler_characteristic());
    }
}

TEST(BarComplex, ConstantMatchesOrderComplex) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + trial % 2;
        auto all = enumerate_partitions(n);
        std::vector<SetPartition> gens;
        std::uniform_int_distribution<int> pick(1, static_cast<int>(all.size()) - 1);
        for (int i = 0; i < 2; ++i) gens.push_back(all[pick(rng)]);
        UpSet U(n, gens);
        auto P = FinitePoset::of_partitions(all);
        std::vector<char> in(all.size());
        std::vector<int> idx;
        for (std::size_t i = 0; i < all.size(); ++i)
            if ((in[i] = U.contains(all[i]))) idx.push_back(static_cast<int>(i));
        auto B = bar_complex(in, constant_functor(P, Ring::Z), BarFlavor::B, Ring::Z);
        auto plain = order_complex(P.subposet(idx), OrderVariant::Plain, Ring::Z);
        // unreduced = reduced plus one in degree 0
        auto h = cohomology(B.total), r = cohomology(plain.complex);
        EXPECT_EQ(h.rank(0), r.rank(0) + 1);
        for (int k = 1; k <= n; ++k) {
            EXPECT_EQ(h.rank(k), r.rank(k));
            EXPECT_EQ(h.torsion(k), r.torsion(k));
        }
    }
}

TEST(BarComplex, RejectsNonUpwardClosed) {
    auto P = pi(3);
    std::vector<char> in(P.size(), 0);
    in[1] = 1;  // an atom without the top
    EXPECT_THROW(bar_complex(in, constant_functor(P, Ring::Q), BarFlavor::B, Ring::Q), ValidationError);
}
