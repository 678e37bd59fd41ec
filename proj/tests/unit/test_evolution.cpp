#include "fsmiss/evolution.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>
#include <vector>

namespace {

using namespace fsmiss;
using P = std::array<double, 3>;

TEST(Dominates, Examples) {
    EXPECT_TRUE(dominates(P{0.1, 2, 5}, P{0.2, 2, 5}));
    EXPECT_FALSE(dominates(P{0.1, 2, 5}, P{0.1, 2, 5}));
    EXPECT_FALSE(dominates(P{0.1, 3, 5}, P{0.2, 2, 5}));
    EXPECT_TRUE(dominates(ObjectiveVector{0.1, 2, 0.0}, ObjectiveVector{0.1, 3, 0.0}));
}

TEST(FastNondominatedSort, HandExample) {
    const std::vector<P> pts{{1, 1, 1}, {2, 2, 2}, {0, 3, 1}, {3, 3, 3}, {1, 1, 1}};
    const auto part = fast_nondominated_sort(pts);
    ASSERT_EQ(part.fronts.size(), 3u);
    EXPECT_EQ(part.fronts[0], (std::vector<std::size_t>{0, 2, 4}));
    EXPECT_EQ(part.fronts[1], (std::vector<std::size_t>{1}));
    EXPECT_EQ(part.fronts[2], (std::vector<std::size_t>{3}));
    EXPECT_EQ(part.rank, (std::vector<std::size_t>{1, 2, 1, 3, 1}));
}

TEST(FastNondominatedSort, AgreesWithPeelingOracle) {
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> small(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<P> pts(200);
        for (auto& p : pts) {
            // integer-valued coordinates on odd trials to force ties
            if (trial % 2) {
                p = {double(small(gen)), double(small(gen)), double(small(gen))};
            } else {
                p = {u(gen), u(gen), u(gen)};
            }
        }
        const auto part = fast_nondominated_sort(pts);
        auto expected = oracle::peel_fronts(pts);
        for (auto& f : expected) std::sort(f.begin(), f.end());
        ASSERT_EQ(part.fronts, expected);
    }
}

TEST(FastNondominatedSort, EmptyInput) {
    const std::vector<P> none;
    EXPECT_TRUE(fast_nondominated_sort(none).fronts.empty());
}

TEST(Sbx, ProbabilityZeroCopiesParents) {
    Rng rng(1);
    VariationParams v;
    v.crossover_probability = 0.0;
    const Candidate a{{0.1, 0.9}}, b{{0.7, 0.3}};
    const auto [c1, c2] = sbx_crossover(a, b, v, rng);
    EXPECT_EQ(c1.position, a.position);
    EXPECT_EQ(c2.position, b.position);
}

TEST(Sbx, ChildrenPreserveParentSumAwayFromBounds) {
    Rng rng(2);
    const Candidate a{{0.45, 0.5, 0.52}}, b{{0.55, 0.5, 0.48}};
    for (int i = 0; i < 200; ++i) {
        const auto [c1, c2] = sbx_crossover(a, b, {}, rng);
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_NEAR(c1.position[j] + c2.position[j], a.position[j] + b.position[j], 1e-12);
        }
    }
}

TEST(Sbx, ChildMeanIsParentMidpoint) {
    Rng rng(3);
    const Candidate a{{0.3}}, b{{0.6}};
    double sum = 0.0;
    constexpr int n = 10000;
    for (int i = 0; i < n; ++i) sum += sbx_crossover(a, b, {}, rng).first.position[0];
    EXPECT_NEAR(sum / n, 0.45, 0.005);
}

TEST(Sbx, ClampsToBounds) {
    Rng rng(4);
    const Candidate a{{0.0, 1.0}}, b{{0.02, 0.97}};
    for (int i = 0; i < 1000; ++i) {
        const auto [c1, c2] = sbx_crossover(a, b, {}, rng);
        for (double x : c1.position) ASSERT_TRUE(x >= 0.0 && x <= 1.0);
        for (double x : c2.position) ASSERT_TRUE(x >= 0.0 && x <= 1.0);
    }
}

TEST(PolynomialMutation, RateZeroLeavesCandidateAlone) {
    Rng rng(5);
    VariationParams v;
    v.mutation_probability = 1e-300;
    const Candidate c{{0.2, 0.4, 0.6}};
    EXPECT_EQ(polynomial_mutation(c, v, rng).position, c.position);
}

TEST(PolynomialMutation, StaysInBoundsAndMovesOffTheLowerBound) {
    Rng rng(6);
    VariationParams v;
    v.mutation_probability = 1.0;
    bool moved_up = false;
    for (int i = 0; i < 2000; ++i) {
        const auto m = polynomial_mutation(Candidate{{0.0, 1.0, 0.5}}, v, rng);
        for (double x : m.position) ASSERT_TRUE(x >= 0.0 && x <= 1.0);
        moved_up = moved_up || m.position[0] > 0.0;
    }
    EXPECT_TRUE(moved_up);
}

TEST(PolynomialMutation, DefaultRateIsOneOverN) {
    EXPECT_DOUBLE_EQ(VariationParams{}.mutation_rate_for(20), 0.05);
    Rng rng(7);
    const Candidate c{std::vector<double>(20, 0.5)};
    std::size_t changed = 0;
    constexpr int n = 5000;
    for (int i = 0; i < n; ++i) {
        const auto m = polynomial_mutation(c, {}, rng);
        for (double x : m.position) changed += x != 0.5;
    }
    EXPECT_NEAR(static_cast<double>(changed) / n, 1.0, 0.05);
}

TEST(OffspringRandomPairing, OddPopulationKeepsSize) {
    Rng rng(8);
    Population parents(7);
    for (auto& p : parents) p.candidate.position = {0.1, 0.9, 0.5};
    EXPECT_EQ(offspring_random_pairing(parents, {}, rng).size(), 7u);
}

}  // namespace
