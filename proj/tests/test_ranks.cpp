#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "minrel/ranks.hpp"
#include "oracle.hpp"

using minrel::compute_ranks;
using minrel::tri_decreasing;
using minrel::tri_increasing;
using minrel::uniform_norm;

TEST(Ranks, TiesAreAveraged) {
    EXPECT_EQ(compute_ranks(std::vector<double>{1.5, 0.2, 0.2, 3.0}).ranks, (std::vector<double>{3, 1.5, 1.5, 4}));
    EXPECT_EQ(compute_ranks(std::vector<double>{5, 5, 5}).ranks, (std::vector<double>{2, 2, 2}));
}

TEST(Ranks, NegatedRanksReverseOrder) {
    EXPECT_EQ(compute_ranks(std::vector<double>{10, 20, 30}, true).ranks, (std::vector<double>{3, 2, 1}));
}

TEST(Ranks, RejectsShortOrNonFinite) {
    EXPECT_THROW(compute_ranks(std::vector<double>{1.0}), minrel::InvalidInput);
    EXPECT_THROW(compute_ranks(std::vector<double>{1.0, NAN}), minrel::InvalidInput);
    EXPECT_THROW(compute_ranks(std::vector<double>{1.0, INFINITY}), minrel::InvalidInput);
    EXPECT_THROW(minrel::DataColumn(std::vector<double>{2.0}, "x"), minrel::InvalidInput);
}

TEST(Ranks, UniformNorm) {
    EXPECT_EQ(uniform_norm(std::vector<double>{10, 20}), (std::vector<double>{0.5, 1.0}));
    const auto u = uniform_norm(std::vector<double>{7, 3, 5});
    EXPECT_DOUBLE_EQ(u[0], 1.0);
    EXPECT_DOUBLE_EQ(u[1], 1.0 / 3);
    EXPECT_DOUBLE_EQ(u[2], 2.0 / 3);
    EXPECT_EQ(uniform_norm(std::vector<double>{4, 4}), (std::vector<double>{0.75, 0.75}));
}

TEST(Ranks, TriangularExamples) {
    EXPECT_EQ(tri_decreasing(std::vector<double>{10, 20}).scores, (std::vector<double>{-0.25, 0.5}));
    const auto d = tri_decreasing(std::vector<double>{30, 10, 20}).scores;
    EXPECT_DOUBLE_EQ(d[0], 0.5);
    EXPECT_DOUBLE_EQ(d[1], 1.0 / 9 - 0.5);
    EXPECT_DOUBLE_EQ(d[2], 4.0 / 9 - 0.5);
    const auto inc = tri_increasing(std::vector<double>{10, 20});
    EXPECT_EQ(inc.scores, (std::vector<double>{-0.5, 0.25}));
    EXPECT_EQ(inc.direction, minrel::Direction::increasing);
}

TEST(Ranks, TriangularMeansAtLargeM) {
    std::vector<double> v(1000);
    std::iota(v.begin(), v.end(), 0.0);
    std::shuffle(v.begin(), v.end(), std::mt19937_64(3));
    const auto d = tri_decreasing(v).scores;
    const auto i = tri_increasing(v).scores;
    const double md = std::accumulate(d.begin(), d.end(), 0.0) / 1000;
    const double mi = std::accumulate(i.begin(), i.end(), 0.0) / 1000;
    EXPECT_NEAR(md, -1.0 / 6, 0.001);
    EXPECT_NEAR(mi, 1.0 / 6, 0.001);
    // closed form for distinct values
    EXPECT_NEAR(md, 1001.0 * 2001.0 / (6.0 * 1e6) - 0.5, 1e-12);
}

// Property checks over random columns with many ties.
class RankProperties : public ::testing::TestWithParam<int> {};

TEST_P(RankProperties, HoldOnRandomColumns) {
    std::mt19937_64 rng(GetParam());
    std::uniform_int_distribution<int> len(2, 60);
    std::uniform_int_distribution<int> level(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = static_cast<std::size_t>(len(rng));
        std::vector<double> v(m);
        for (double& e : v) e = 0.5 * level(rng);

        const auto r = compute_ranks(v).ranks;
        EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0.0), m * (m + 1) / 2.0);
        EXPECT_EQ(r, oracle::ranks(v));

        // r(-X) = m + 1 - r(X), ties included
        const auto rn = compute_ranks(v, true).ranks;
        for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(rn[k], static_cast<double>(m + 1) - r[k]);

        // mirror identity, bitwise
        const auto inc = tri_increasing(v).scores;
        const auto dec_neg = tri_decreasing(oracle::negate(v)).scores;
        for (std::size_t k = 0; k < m; ++k) EXPECT_EQ(inc[k], -dec_neg[k]);

        for (double s : tri_decreasing(v).scores) {
            EXPECT_GE(s, -0.5);
            EXPECT_LE(s, 0.5);
        }

        std::vector<double> cube(v), ex(v);
        for (double& e : cube) e = e * e * e;
        for (double& e : ex) e = std::exp(e);
        EXPECT_EQ(compute_ranks(cube).ranks, r);
        EXPECT_EQ(compute_ranks(ex).ranks, r);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RankProperties, ::testing::Values(1, 2, 3, 4));

TEST(Ranks, DistinctValuesGiveSquaredGrid) {
    std::mt19937_64 rng(9);
    const auto v = oracle::distinct_sample(rng, 37);
    auto s = tri_decreasing(v).scores;
    std::sort(s.begin(), s.end());
    for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_NEAR(s[k], std::pow((k + 1) / 37.0, 2) - 0.5, 1e-15);
    }
}
