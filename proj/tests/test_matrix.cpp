#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "minrel/matrix.hpp"
#include "minrel/synth.hpp"
#include "oracle.hpp"

using namespace minrel;

namespace {

Dataset random_dataset(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<DataColumn> cols;
    for (std::size_t j = 0; j < n; ++j) cols.emplace_back(oracle::distinct_sample(rng, m), "v" + std::to_string(j));
    return Dataset(std::move(cols));
}

bool same_bytes(const CoefficientMatrix& a, const CoefficientMatrix& b) {
    return a.values.size() == b.values.size() &&
           std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0 &&
           a.degenerate == b.degenerate;
}

} // namespace

TEST(Dataset, Validation) {
    EXPECT_THROW(Dataset({DataColumn({1, 2, 3}, "a"), DataColumn({1, 2}, "b")}), InvalidInput);
    EXPECT_THROW(Dataset({DataColumn({1, 2}, "a"), DataColumn({1, 2}, "a")}), InvalidInput);
    const Dataset d({DataColumn({1, 2}, "a"), DataColumn({3, 4}, "b")});
    EXPECT_EQ(d.index_of("b"), 1u);
    EXPECT_THROW(d.index_of("zz"), InvalidInput);
}

TEST(TransformCache, OneEntryPerColumn) {
    const Dataset d({DataColumn({1, 2, 3}, "a"), DataColumn({3, 1, 2}, "b"), DataColumn({7, 7, 7}, "c")});
    const auto cache = transform_cache(d);
    ASSERT_EQ(cache.size(), 3u);
    EXPECT_EQ(cache[1].inc.scores, tri_increasing(d.column(1).values()).scores);
    EXPECT_EQ(cache[1].neg_dec.scores, tri_decreasing(oracle::negate({3, 1, 2})).scores);
    EXPECT_EQ(cache[2].ranks.ranks, (std::vector<double>{2, 2, 2}));
}

TEST(PairwiseMatrix, SpearmanOnMonotonePairIsOne) {
    std::mt19937_64 rng(1);
    auto x = oracle::distinct_sample(rng, 200);
    auto ex = x;
    for (double& e : ex) e = std::exp(e);
    const Dataset d({DataColumn(x, "X"), DataColumn(ex, "expX")});
    const auto mat = pairwise_matrix(d, "spearman");
    EXPECT_EQ(mat.at(0, 1), 1.0);
    EXPECT_EQ(mat.at(1, 0), 1.0);
    EXPECT_EQ(mat.at(0, 0), 1.0);
}

TEST(PairwiseMatrix, SymmetricMetricsAreSymmetric) {
    const Dataset d = random_dataset(6, 80, 2);
    for (Metric m : {Metric::pearson, Metric::spearman, Metric::max_iota_sq}) {
        const auto mat = pairwise_matrix(d, m);
        for (std::size_t i = 0; i < d.cols(); ++i) {
            for (std::size_t j = 0; j < d.cols(); ++j) EXPECT_EQ(mat.at(i, j), mat.at(j, i));
            if (m != Metric::max_iota_sq) EXPECT_DOUBLE_EQ(mat.at(i, i), 1.0);
        }
    }
}

TEST(PairwiseMatrix, IotaIsAsymmetricOnProducts) {
    double ab = 0;
    double ba = 0;
    const int reps = 20;
    for (int s = 0; s < reps; ++s) {
        const auto g = gen_multiplication(1000, 100 + s);
        const auto mat = pairwise_matrix(g.data, Metric::iota);
        ab += mat.at(0, 1) / reps;
        ba += mat.at(1, 0) / reps;
    }
    EXPECT_NEAR(ab, 0.99, 0.01);
    EXPECT_NEAR(ba, 0.77, 0.03);
}

TEST(PairwiseMatrix, MatchesDirectCalls) {
    const Dataset d = random_dataset(5, 60, 3);
    for (Metric metric : {Metric::pearson, Metric::spearman, Metric::iota, Metric::iota2, Metric::max_iota_sq,
                          Metric::minrel_simple}) {
        const auto mat = pairwise_matrix(d, metric);
        for (std::size_t i = 0; i < d.cols(); ++i) {
            for (std::size_t j = 0; j < d.cols(); ++j) {
                const auto x = d.column(i).values();
                const auto y = d.column(j).values();
                double direct = 0;
                switch (metric) {
                case Metric::pearson: direct = pearson(x, y).value; break;
                case Metric::spearman: direct = spearman(x, y).value; break;
                case Metric::iota: direct = rank_minrelation(x, y).value; break;
                case Metric::iota2: direct = iota2(x, y).value; break;
                case Metric::max_iota_sq: direct = max_iota_sq(x, y); break;
                case Metric::minrel_simple: direct = minrel_simple(x, y).value; break;
                }
                EXPECT_EQ(mat.at(i, j), direct) << metric_name(metric) << " " << i << "," << j;
            }
        }
    }
}

TEST(PairwiseMatrix, WorkerCountDoesNotChangeBytes) {
    const Dataset d = random_dataset(12, 300, 4);
    for (Metric m : {Metric::iota, Metric::spearman, Metric::max_iota_sq}) {
        const auto seq = pairwise_matrix(d, m, 1);
        EXPECT_TRUE(same_bytes(seq, pairwise_matrix(d, m, 3)));
        EXPECT_TRUE(same_bytes(seq, pairwise_matrix(d, m, 8)));
    }
}

TEST(PairwiseMatrix, SortsOnlyDuringPreprocessing) {
    const Dataset d = random_dataset(10, 50, 5);
    const std::size_t before = rank_sort_count();
    const auto cache = transform_cache(d);
    const std::size_t after_cache = rank_sort_count();
    EXPECT_EQ(after_cache - before, 2 * d.cols());
    (void)pairwise_matrix(d, cache, Metric::iota, 1);
    (void)pairwise_matrix(d, cache, Metric::max_iota_sq, 1);
    (void)pairwise_matrix(d, cache, Metric::spearman, 1);
    EXPECT_EQ(rank_sort_count(), after_cache);
}

TEST(PairwiseMatrix, UnknownMetricAndDegenerateMask) {
    const Dataset d({DataColumn({1, 2, 3}, "a"), DataColumn({5, 5, 5}, "c")});
    EXPECT_THROW(pairwise_matrix(d, "kendall"), InvalidInput);
    const auto mat = pairwise_matrix(d, Metric::pearson);
    EXPECT_TRUE(mat.is_degenerate(0, 1));
    EXPECT_EQ(mat.at(0, 1), 0.0);
    EXPECT_FALSE(mat.is_degenerate(0, 0));
}

TEST(ProfileMatrix, MultiplicationProfile) {
    std::array<double, 4> mean{};
    const int reps = 50;
    for (int s = 0; s < reps; ++s) {
        const auto g = gen_multiplication(1000, 7 + s);
        const auto prof = minrel_profile_matrix(g.data);
        const auto& p = prof[0 * 3 + 1];
        const auto o = p.orientations();
        for (int k = 0; k < 4; ++k) mean[k] += o[k].value / reps;
        double best = 0;
        for (const auto& c : o) best = std::max(best, c.value * c.value);
        EXPECT_EQ(p.max_iota_sq, best);
    }
    EXPECT_NEAR(mean[0], 0.99, 0.03);
    EXPECT_NEAR(mean[1], 0.77, 0.03);
    EXPECT_NEAR(mean[2], -0.79, 0.03);
    EXPECT_NEAR(mean[3], -0.99, 0.03);
}

TEST(ProfileMatrix, SelfProfileIsSaturated) {
    const Dataset d = random_dataset(2, 1000, 6);
    const auto prof = minrel_profile_matrix(d);
    for (const auto& c : prof[0].orientations()) EXPECT_GE(std::abs(c.value), 0.999);
}
