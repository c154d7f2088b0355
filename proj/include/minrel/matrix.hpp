#pragma once

// Pairwise coefficient matrices over a dataset. Each column is ranked once
// up front; the pairwise pass reads cached transforms only and writes every
// (i, j) cell into pre-sized storage, so results do not depend on how the
// pairs are scheduled across workers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include "minrel/coeff.hpp"
#include "minrel/error.hpp"
#include "minrel/ranks.hpp"

namespace minrel {

/// Named columns of identical length m >= 2 with unique names.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<DataColumn> columns) : columns_(std::move(columns)) {
        if (columns_.empty()) throw InvalidInput("dataset has no columns");
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            const auto& c = columns_[i];
            if (c.size() != columns_.front().size()) {
                throw InvalidInput("column '" + c.name() + "' has " + std::to_string(c.size()) +
                                   " rows, expected " + std::to_string(columns_.front().size()));
            }
            if (!seen.insert(c.name()).second) throw InvalidInput("duplicate column name '" + c.name() + "'");
        }
    }

    std::size_t cols() const noexcept { return columns_.size(); }
    std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
    const DataColumn& column(std::size_t i) const { return columns_.at(i); }
    const std::vector<DataColumn>& columns() const noexcept { return columns_; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(columns_.size());
        for (const auto& c : columns_) out.push_back(c.name());
        return out;
    }

    std::size_t index_of(std::string_view name) const {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (columns_[i].name() == name) return i;
        }
        throw InvalidInput("unknown column '" + std::string(name) + "'");
    }

    const DataColumn& column(std::string_view name) const { return columns_[index_of(name)]; }

private:
    std::vector<DataColumn> columns_;
};

enum class Metric { pearson, spearman, iota, iota2, max_iota_sq, minrel_simple };

inline std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::pearson: return "pearson";
    case Metric::spearman: return "spearman";
    case Metric::iota: return "iota";
    case Metric::iota2: return "iota2";
    case Metric::max_iota_sq: return "max_iota_sq";
    case Metric::minrel_simple: return "minrel_simple";
    }
    return "unknown";
}

inline Metric parse_metric(std::string_view name) {
    for (Metric m : {Metric::pearson, Metric::spearman, Metric::iota, Metric::iota2, Metric::max_iota_sq,
                     Metric::minrel_simple}) {
        if (metric_name(m) == name) return m;
    }
    throw InvalidInput("unknown metric '" + std::string(name) + "'");
}

/// n x n result, row-major. values[i][j] = metric(column i, column j).
struct CoefficientMatrix {
    Metric metric = Metric::pearson;
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<char> degenerate;

    std::size_t n() const noexcept { return names.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * n() + j]; }
    bool is_degenerate(std::size_t i, std::size_t j) const { return degenerate[i * n() + j] != 0; }
};

using TransformCache = std::vector<ColumnTransforms>;

/// Ranks and triangular scores of every column (and its negation), computed once.
inline TransformCache transform_cache(const Dataset& data) {
    TransformCache cache;
    cache.reserve(data.cols());
    for (const auto& c : data.columns()) {
        try {
            cache.push_back(make_transforms(c.values()));
        } catch (const InvalidInput& e) {
            throw InvalidInput("column '" + c.name() + "': " + e.what());
        }
    }
    return cache;
}

inline CoefficientValue metric_value(Metric metric, const ColumnTransforms& x, const ColumnTransforms& y) {
    switch (metric) {
    case Metric::pearson: return pearson(x.values, y.values);
    case Metric::spearman: return spearman(x, y);
    case Metric::iota: return rank_minrelation(x, y);
    case Metric::iota2: return iota2(x, y);
    case Metric::max_iota_sq: return {max_iota_sq(x, y), false};
    case Metric::minrel_simple: return minrel_simple(x.values, y.values);
    }
    throw InvalidInput("unknown metric");
}

namespace detail {

inline unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(k) for k in [0, count) over `workers` threads; fn writes only its own slot.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) fn(k);
        });
    }
}

} // namespace detail

inline CoefficientMatrix pairwise_matrix(const Dataset& data, const TransformCache& cache, Metric metric,
                                         unsigned workers = 0) {
    const std::size_t n = data.cols();
    CoefficientMatrix out{metric, data.names(), std::vector<double>(n * n), std::vector<char>(n * n)};
    detail::parallel_for(n * n, workers, [&](std::size_t k) {
        const CoefficientValue v = metric_value(metric, cache[k / n], cache[k % n]);
        out.values[k] = v.value;
        out.degenerate[k] = v.degenerate ? 1 : 0;
    });
    return out;
}

/// workers = 0 uses the hardware concurrency.
inline CoefficientMatrix pairwise_matrix(const Dataset& data, Metric metric, unsigned workers = 0) {
    return pairwise_matrix(data, transform_cache(data), metric, workers);
}

inline CoefficientMatrix pairwise_matrix(const Dataset& data, std::string_view metric, unsigned workers = 0) {
    return pairwise_matrix(data, parse_metric(metric), workers);
}

/// Row-major n x n four-orientation profiles.
inline std::vector<MinrelProfile> minrel_profile_matrix(const Dataset& data, unsigned workers = 0) {
    const TransformCache cache = transform_cache(data);
    const std::size_t n = data.cols();
    std::vector<MinrelProfile> out(n * n);
    detail::parallel_for(n * n, workers,
                         [&](std::size_t k) { out[k] = minrel_profile(cache[k / n], cache[k % n]); });
    return out;
}

} // namespace minrel
