#pragma once

// Tie-aware ranking and the rank-based marginal transforms:
// uniform r/m and the two triangular squared-rank maps in [-0.5, 0.5].

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "minrel/error.hpp"

namespace minrel {

namespace detail {

// Instrumentation only: counts every sort performed by compute_ranks so tests
// can check that pairwise passes reuse cached transforms.
inline std::atomic<std::size_t> rank_sort_counter{0};

inline void validate_samples(std::span<const double> values) {
    if (values.size() < 2) {
        throw InvalidInput("column needs at least 2 samples, got " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidInput("non-finite value at sample " + std::to_string(i));
        }
    }
}

} // namespace detail

/// Number of rank sorts performed by this process so far.
inline std::size_t rank_sort_count() noexcept {
    return detail::rank_sort_counter.load(std::memory_order_relaxed);
}

/// One variable's samples. Construction enforces m >= 2 and finiteness.
class DataColumn {
public:
    DataColumn() = default;
    explicit DataColumn(std::vector<double> values, std::string name = {})
        : values_(std::move(values)), name_(std::move(name)) {
        try {
            detail::validate_samples(values_);
        } catch (const InvalidInput& e) {
            throw InvalidInput(name_.empty() ? std::string(e.what())
                                             : "column '" + name_ + "': " + e.what());
        }
    }

    std::span<const double> values() const noexcept { return values_; }
    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    operator std::span<const double>() const noexcept { return values_; }

private:
    std::vector<double> values_;
    std::string name_;
};

/// Fractional (tie-averaged) 1-based ranks.
struct RankVector {
    std::vector<double> ranks;
    std::size_t m = 0;
};

enum class Direction { decreasing, increasing };

/// Squared-rank scores. Decreasing: r^2/m^2 - 0.5. Increasing: 0.5 - r(-X)^2/m^2.
struct TriangularScores {
    std::vector<double> scores;
    Direction direction = Direction::decreasing;
};

/// Ranks of `values` (or of their negation) in increasing order. Tied values
/// share the mean of the positions they span, so the rank sum is m(m+1)/2.
inline RankVector compute_ranks(std::span<const double> values, bool negate = false) {
    detail::validate_samples(values);
    const std::size_t m = values.size();
    auto key = [&](std::size_t i) { return negate ? -values[i] : values[i]; };

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    detail::rank_sort_counter.fetch_add(1, std::memory_order_relaxed);

    RankVector out{std::vector<double>(m), m};
    std::size_t start = 0;
    while (start < m) {
        std::size_t end = start + 1;
        while (end < m && key(order[end]) == key(order[start])) ++end;
        // positions start+1 .. end, mean = (start + 1 + end) / 2
        const double avg = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) out.ranks[order[k]] = avg;
        start = end;
    }
    return out;
}

/// r(X)/m, values in (0, 1].
inline std::vector<double> uniform_norm(std::span<const double> values) {
    RankVector r = compute_ranks(values);
    const double m = static_cast<double>(r.m);
    for (double& v : r.ranks) v /= m;
    return std::move(r.ranks);
}

namespace detail {

// r^2/m^2 - 0.5 for every rank; shared by both triangular directions so that
// the increasing map is the exact negation of the decreasing one on -X.
inline std::vector<double> squared_rank_scores(const RankVector& r) {
    const double m2 = static_cast<double>(r.m) * static_cast<double>(r.m);
    std::vector<double> out(r.m);
    for (std::size_t i = 0; i < r.m; ++i) out[i] = (r.ranks[i] * r.ranks[i]) / m2 - 0.5;
    return out;
}

} // namespace detail

inline TriangularScores tri_decreasing_from_ranks(const RankVector& ranks) {
    return {detail::squared_rank_scores(ranks), Direction::decreasing};
}

/// `negated_ranks` must be r(-X), i.e. compute_ranks(x, true).
inline TriangularScores tri_increasing_from_ranks(const RankVector& negated_ranks) {
    TriangularScores t{detail::squared_rank_scores(negated_ranks), Direction::increasing};
    for (double& s : t.scores) s = -s;
    return t;
}

inline TriangularScores tri_decreasing(std::span<const double> values) {
    return tri_decreasing_from_ranks(compute_ranks(values, false));
}

inline TriangularScores tri_increasing(std::span<const double> values) {
    return tri_increasing_from_ranks(compute_ranks(values, true));
}

} // namespace minrel
