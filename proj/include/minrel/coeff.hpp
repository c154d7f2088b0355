#pragma once

// Bivariate coefficients: raw minrelation forms, the rank minrelation
// coefficient iota in its four orientations, iota2, max iota^2, and the
// Pearson / Spearman baselines.
//
// Indicator convention: the "minrelation" side counts x > -y and the
// "violation" side counts x > y, both strict. With that convention the
// coefficient is exactly antisymmetric under y -> -y.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "minrel/error.hpp"
#include "minrel/ranks.hpp"

namespace minrel {

/// A coefficient in [-1, 1]. `degenerate` is set when the defining
/// denominator vanished, in which case value is 0.
struct CoefficientValue {
    double value = 0.0;
    bool degenerate = false;

    friend bool operator==(const CoefficientValue&, const CoefficientValue&) = default;
};

/// The four tabulated orientations of iota for one (X, Y) pair.
struct MinrelProfile {
    CoefficientValue iota_xy;     // iota(X, Y)
    CoefficientValue iota_yx;     // iota(Y, X)
    CoefficientValue iota_negx_y; // iota(-X, Y)
    CoefficientValue iota_negy_x; // iota(-Y, X)
    double max_iota_sq = 0.0;

    std::array<CoefficientValue, 4> orientations() const {
        return {iota_xy, iota_yx, iota_negx_y, iota_negy_x};
    }
};

/// Sign applied to a column's raw values before ranking.
enum class Sign : int { plus = 1, minus = -1 };

namespace detail {

inline void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidInput("length mismatch: " + std::to_string(x.size()) + " vs " +
                           std::to_string(y.size()));
    }
    validate_samples(x);
    validate_samples(y);
}

inline CoefficientValue ratio(double a, double b) {
    const double denom = a + b;
    if (denom == 0.0) return {0.0, true};
    return {std::clamp((a - b) / denom, -1.0, 1.0), false};
}

inline CoefficientValue squared_tradeoff(std::span<const double> x, std::span<const double> y_minrel,
                                         std::span<const double> y_viol) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > -y_minrel[i]) {
            const double d = x[i] + y_minrel[i];
            a += d * d;
        }
        if (x[i] > y_viol[i]) {
            const double d = x[i] - y_viol[i];
            b += d * d;
        }
    }
    return ratio(a, b);
}

} // namespace detail

/// Fraction of samples with x_i <= y_i.
inline double p_leq_hat(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) c += x[i] <= y[i] ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(x.size());
}

/// (C - D) / m with C = #{x_i <= y_i}, D = #{x_i > y_i}.
inline CoefficientValue minrel_simple(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    double c = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) (x[i] <= y[i] ? c : d) += 1.0;
    return detail::ratio(c, d);
}

/// Counting form on caller-centered data: (A - B)/(A + B) with
/// A = #{x_i > -y_i}, B = #{x_i > y_i}.
inline CoefficientValue iota_raw_indicator(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > -y[i]) a += 1.0;
        if (x[i] > y[i]) b += 1.0;
    }
    return detail::ratio(a, b);
}

/// Squared-distance form on caller-centered data.
inline CoefficientValue iota_raw_squared(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    return detail::squared_tradeoff(x, y, y);
}

/// iota from precomputed triangular scores: decreasing scores of X, and the
/// decreasing and increasing scores of Y.
inline CoefficientValue iota_from_scores(std::span<const double> x_dec, std::span<const double> y_dec,
                                         std::span<const double> y_inc) {
    if (x_dec.size() != y_dec.size() || y_dec.size() != y_inc.size()) {
        throw InvalidInput("score length mismatch");
    }
    return detail::squared_tradeoff(x_dec, y_dec, y_inc);
}

/// All rank transforms of one column and of its negation.
struct ColumnTransforms {
    std::vector<double> values;
    RankVector ranks;     // r(X)
    RankVector neg_ranks; // r(-X)
    TriangularScores dec;     // tri_decreasing(X)
    TriangularScores inc;     // tri_increasing(X)
    TriangularScores neg_dec; // tri_decreasing(-X)
    TriangularScores neg_inc; // tri_increasing(-X)

    std::size_t size() const noexcept { return values.size(); }

    std::span<const double> decreasing(Sign s) const {
        return s == Sign::plus ? std::span<const double>(dec.scores) : neg_dec.scores;
    }
    std::span<const double> increasing(Sign s) const {
        return s == Sign::plus ? std::span<const double>(inc.scores) : neg_inc.scores;
    }
};

inline ColumnTransforms make_transforms(std::span<const double> values) {
    ColumnTransforms t;
    t.values.assign(values.begin(), values.end());
    t.ranks = compute_ranks(values, false);
    t.neg_ranks = compute_ranks(values, true);
    // r(-(-X)) = r(X), so the negated column's transforms reuse both rank vectors.
    t.dec = tri_decreasing_from_ranks(t.ranks);
    t.inc = tri_increasing_from_ranks(t.neg_ranks);
    t.neg_dec = tri_decreasing_from_ranks(t.neg_ranks);
    t.neg_inc = tri_increasing_from_ranks(t.ranks);
    return t;
}

inline CoefficientValue iota_oriented(const ColumnTransforms& x, const ColumnTransforms& y,
                                      Sign sign_x, Sign sign_y) {
    return iota_from_scores(x.decreasing(sign_x), y.decreasing(sign_y), y.increasing(sign_y));
}

inline CoefficientValue rank_minrelation(const ColumnTransforms& x, const ColumnTransforms& y) {
    return iota_oriented(x, y, Sign::plus, Sign::plus);
}

/// iota2(X, Y) = iota(-Y, -X).
inline CoefficientValue iota2(const ColumnTransforms& x, const ColumnTransforms& y) {
    return iota_oriented(y, x, Sign::minus, Sign::minus);
}

inline MinrelProfile minrel_profile(const ColumnTransforms& x, const ColumnTransforms& y) {
    MinrelProfile p;
    p.iota_xy = iota_oriented(x, y, Sign::plus, Sign::plus);
    p.iota_yx = iota_oriented(y, x, Sign::plus, Sign::plus);
    p.iota_negx_y = iota_oriented(x, y, Sign::minus, Sign::plus);
    p.iota_negy_x = iota_oriented(y, x, Sign::minus, Sign::plus);
    for (const auto& c : p.orientations()) p.max_iota_sq = std::max(p.max_iota_sq, c.value * c.value);
    return p;
}

inline double max_iota_sq(const ColumnTransforms& x, const ColumnTransforms& y) {
    return minrel_profile(x, y).max_iota_sq;
}

/// Rank minrelation coefficient iota(X, Y) on raw samples.
inline CoefficientValue rank_minrelation(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    const TriangularScores x_dec = tri_decreasing(x);
    const RankVector ry = compute_ranks(y, false);
    const RankVector ry_neg = compute_ranks(y, true);
    return iota_from_scores(x_dec.scores, tri_decreasing_from_ranks(ry).scores,
                            tri_increasing_from_ranks(ry_neg).scores);
}

/// iota(sign_x * X, sign_y * Y); negation is applied before ranking.
inline CoefficientValue iota_oriented(std::span<const double> x, std::span<const double> y, Sign sign_x,
                                      Sign sign_y) {
    detail::check_pair(x, y);
    const bool nx = sign_x == Sign::minus;
    const bool ny = sign_y == Sign::minus;
    const TriangularScores x_dec = tri_decreasing_from_ranks(compute_ranks(x, nx));
    const TriangularScores y_dec = tri_decreasing_from_ranks(compute_ranks(y, ny));
    const TriangularScores y_inc = tri_increasing_from_ranks(compute_ranks(y, !ny));
    return iota_from_scores(x_dec.scores, y_dec.scores, y_inc.scores);
}

inline CoefficientValue iota2(std::span<const double> x, std::span<const double> y) {
    return iota_oriented(y, x, Sign::minus, Sign::minus);
}

inline MinrelProfile minrel_profile(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    return minrel_profile(make_transforms(x), make_transforms(y));
}

inline double max_iota_sq(std::span<const double> x, std::span<const double> y) {
    return minrel_profile(x, y).max_iota_sq;
}

/// Product-moment correlation; degenerate (0) when either column is constant.
inline CoefficientValue pearson(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v[0]; });
    };
    if (constant(x) || constant(y)) return {0.0, true};
    const double m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / m;
        my += y[i] / m;
    }
    // Deviations are scaled by their largest magnitude so squares cannot overflow.
    double scale_x = 0.0;
    double scale_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        scale_x = std::max(scale_x, std::abs(x[i] - mx));
        scale_y = std::max(scale_y, std::abs(y[i] - my));
    }
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = (x[i] - mx) / scale_x;
        const double dy = (y[i] - my) / scale_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return {0.0, true};
    return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

inline CoefficientValue spearman(const ColumnTransforms& x, const ColumnTransforms& y) {
    return pearson(x.ranks.ranks, y.ranks.ranks);
}

inline CoefficientValue spearman(std::span<const double> x, std::span<const double> y) {
    detail::check_pair(x, y);
    return pearson(compute_ranks(x).ranks, compute_ranks(y).ranks);
}

} // namespace minrel
