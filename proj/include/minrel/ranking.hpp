#pragma once

// Variable-ranking filter and its evaluation protocols:
//  - rank_variables orders candidate predictors of a target by a bivariate score,
//  - average_position / compare_criteria implement the win/loss rule on known
//    relevant sets (lower mean position of the relevant variables wins),
//  - split_half_cv_eval ranks on one half of the rows and scores the top-k
//    subsets by k-fold cross-validated MSE on the other half.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "minrel/coeff.hpp"
#include "minrel/error.hpp"
#include "minrel/matrix.hpp"
#include "minrel/synth.hpp"

namespace minrel {

enum class Criterion {
    rho2,        // Spearman rho^2
    max_iota_sq, // max of iota^2 over the four orientations
    iota_sq,     // iota(target, candidate)^2 only
};

inline std::string_view criterion_name(Criterion c) {
    switch (c) {
    case Criterion::rho2: return "rho2";
    case Criterion::max_iota_sq: return "max_iota_sq";
    case Criterion::iota_sq: return "iota_sq";
    }
    return "unknown";
}

inline Criterion parse_criterion(std::string_view name) {
    for (Criterion c : {Criterion::rho2, Criterion::max_iota_sq, Criterion::iota_sq}) {
        if (criterion_name(c) == name) return c;
    }
    throw InvalidInput("unknown criterion '" + std::string(name) + "'");
}

struct RankedVariable {
    std::string name;
    std::size_t column = 0;
    double score = 0.0;
};

struct RankingResult {
    std::string target;
    Criterion criterion = Criterion::rho2;
    std::vector<RankedVariable> ordered;
};

struct RelevanceEval {
    std::vector<std::string> relevant;
    double avg_position = 0.0;
};

/// Degenerate coefficients score 0.
inline double criterion_score(Criterion c, const ColumnTransforms& target, const ColumnTransforms& candidate) {
    switch (c) {
    case Criterion::rho2: {
        const CoefficientValue r = spearman(candidate, target);
        return r.degenerate ? 0.0 : r.value * r.value;
    }
    case Criterion::max_iota_sq: return max_iota_sq(target, candidate);
    case Criterion::iota_sq: {
        const CoefficientValue v = rank_minrelation(target, candidate);
        return v.degenerate ? 0.0 : v.value * v.value;
    }
    }
    throw InvalidInput("unknown criterion");
}

/// Every non-target column, by descending score; ties keep ascending column index.
inline RankingResult rank_variables(const Dataset& data, const TransformCache& cache, std::string_view target,
                                    Criterion criterion) {
    const std::size_t t = data.index_of(target);
    if (data.cols() < 2) throw InvalidInput("ranking needs at least 2 columns");
    RankingResult out{std::string(target), criterion, {}};
    for (std::size_t j = 0; j < data.cols(); ++j) {
        if (j == t) continue;
        out.ordered.push_back({data.column(j).name(), j, criterion_score(criterion, cache[t], cache[j])});
    }
    std::stable_sort(out.ordered.begin(), out.ordered.end(),
                     [](const RankedVariable& a, const RankedVariable& b) { return a.score > b.score; });
    return out;
}

inline RankingResult rank_variables(const Dataset& data, std::string_view target, Criterion criterion) {
    return rank_variables(data, transform_cache(data), target, criterion);
}

/// Mean 1-based position of `relevant` in the ranking.
inline RelevanceEval average_position(const RankingResult& ranking, const std::vector<std::string>& relevant) {
    if (relevant.empty()) throw InvalidInput("relevant set is empty");
    const std::set<std::string> unique(relevant.begin(), relevant.end());
    double total = 0.0;
    for (const auto& name : unique) {
        auto it = std::find_if(ranking.ordered.begin(), ranking.ordered.end(),
                               [&](const RankedVariable& v) { return v.name == name; });
        if (it == ranking.ordered.end()) {
            throw InvalidInput("relevant variable '" + name + "' is not among the ranked columns");
        }
        total += static_cast<double>(it - ranking.ordered.begin() + 1);
    }
    return {std::vector<std::string>(unique.begin(), unique.end()), total / static_cast<double>(unique.size())};
}

struct TargetSpec {
    std::string target;
    std::vector<std::string> relevant;
};

enum class Outcome { win, loss, draw };

inline std::string_view outcome_name(Outcome o) {
    switch (o) {
    case Outcome::win: return "win";
    case Outcome::loss: return "loss";
    case Outcome::draw: return "draw";
    }
    return "unknown";
}

struct TargetOutcome {
    std::string target;
    double avg_position_first = 0.0;
    double avg_position_second = 0.0;
    Outcome outcome = Outcome::draw; // from the first criterion's point of view
};

/// Win/loss tally of `first` against `second`.
struct WinLossRecord {
    Criterion first = Criterion::max_iota_sq;
    Criterion second = Criterion::rho2;
    std::vector<TargetOutcome> targets;
    std::size_t wins = 0;
    std::size_t losses = 0;
    std::size_t draws = 0;

    void add(TargetOutcome o) {
        switch (o.outcome) {
        case Outcome::win: ++wins; break;
        case Outcome::loss: ++losses; break;
        case Outcome::draw: ++draws; break;
        }
        targets.push_back(std::move(o));
    }
};

/// Targets whose relevant set is smaller than `min_relevant` are skipped.
inline WinLossRecord compare_criteria(const Dataset& data, const std::vector<TargetSpec>& targets,
                                      Criterion first = Criterion::max_iota_sq,
                                      Criterion second = Criterion::rho2, std::size_t min_relevant = 1) {
    const TransformCache cache = transform_cache(data);
    WinLossRecord rec{first, second, {}, 0, 0, 0};
    for (const auto& spec : targets) {
        if (spec.relevant.empty()) throw InvalidInput("target '" + spec.target + "' has no relevant variables");
        if (spec.relevant.size() < min_relevant) continue;
        const double p1 = average_position(rank_variables(data, cache, spec.target, first), spec.relevant).avg_position;
        const double p2 = average_position(rank_variables(data, cache, spec.target, second), spec.relevant).avg_position;
        const Outcome o = p1 < p2 ? Outcome::win : (p2 < p1 ? Outcome::loss : Outcome::draw);
        rec.add({spec.target, p1, p2, o});
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Split-half cross-validated evaluation

class Regressor {
public:
    virtual ~Regressor() = default;
    /// Rows of `features` are samples.
    virtual void fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& response) = 0;
    virtual Eigen::VectorXd predict(const Eigen::MatrixXd& features) const = 0;
    /// True if the last fit needed regularization.
    virtual bool regularized() const { return false; }
};

using RegressorFactory = std::function<std::unique_ptr<Regressor>()>;

/// Ordinary least squares with intercept via the normal equations. A
/// rank-deficient system gets `ridge` added to the diagonal.
class LeastSquaresRegressor final : public Regressor {
public:
    static constexpr double ridge = 1e-8;

    void fit(const Eigen::MatrixXd& features, const Eigen::VectorXd& response) override {
        const Eigen::MatrixXd design = with_intercept(features);
        Eigen::MatrixXd gram = design.transpose() * design;
        const Eigen::VectorXd rhs = design.transpose() * response;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
        regularized_ = lu.rank() < gram.rows();
        if (regularized_) {
            gram.diagonal().array() += ridge;
            coef_ = gram.ldlt().solve(rhs);
        } else {
            coef_ = lu.solve(rhs);
        }
    }

    Eigen::VectorXd predict(const Eigen::MatrixXd& features) const override {
        return with_intercept(features) * coef_;
    }

    bool regularized() const override { return regularized_; }
    const Eigen::VectorXd& coefficients() const noexcept { return coef_; }

private:
    static Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& features) {
        Eigen::MatrixXd d(features.rows(), features.cols() + 1);
        d.col(0).setOnes();
        d.rightCols(features.cols()) = features;
        return d;
    }

    Eigen::VectorXd coef_;
    bool regularized_ = false;
};

struct CvOptions {
    Criterion criterion = Criterion::rho2;
    std::vector<std::size_t> subset_sizes{2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    RegressorFactory regressor = [] { return std::make_unique<LeastSquaresRegressor>(); };
};

struct CvSizeResult {
    std::size_t size = 0;
    double mse = 0.0;
};

struct CvSummary {
    RankingResult ranking; // computed on the ranking half
    std::vector<CvSizeResult> per_size;
    double mean_mse = 0.0;
    bool ridge_used = false;
    std::size_t ranking_rows = 0;
    std::size_t evaluation_rows = 0;
};

namespace detail {

// Rows sorted lexicographically by their values, then Fisher-Yates shuffled
// with the seed. Independent of the input row order.
inline std::vector<std::size_t> canonical_shuffle(const Dataset& data, std::uint64_t seed) {
    const std::size_t m = data.rows();
    std::vector<std::size_t> rows(m);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        for (const auto& c : data.columns()) {
            if (c[a] != c[b]) return c[a] < c[b];
        }
        return false;
    });
    Rng rng(seed);
    for (std::size_t i = m; i > 1; --i) {
        const auto j = std::min(i - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(i)));
        std::swap(rows[i - 1], rows[j]);
    }
    return rows;
}

inline Dataset subset_rows(const Dataset& data, std::span<const std::size_t> rows) {
    std::vector<DataColumn> cols;
    cols.reserve(data.cols());
    for (const auto& c : data.columns()) {
        std::vector<double> v;
        v.reserve(rows.size());
        for (std::size_t r : rows) v.push_back(c[r]);
        cols.emplace_back(std::move(v), c.name());
    }
    return Dataset(std::move(cols));
}

} // namespace detail

inline CvSummary split_half_cv_eval(const Dataset& data, std::string_view target, const CvOptions& opt) {
    const std::size_t m = data.rows();
    const std::size_t t = data.index_of(target);
    if (opt.folds < 2) throw InvalidInput("need at least 2 folds");
    if (m < 2 * opt.folds || m < 4) {
        throw InvalidInput("need at least " + std::to_string(std::max<std::size_t>(2 * opt.folds, 4)) +
                           " rows, got " + std::to_string(m));
    }
    if (opt.subset_sizes.empty()) throw InvalidInput("no subset sizes given");
    for (std::size_t k : opt.subset_sizes) {
        if (k < 1 || k > data.cols() - 1) {
            throw InvalidInput("subset size " + std::to_string(k) + " outside [1, " +
                               std::to_string(data.cols() - 1) + "]");
        }
    }

    const std::vector<std::size_t> rows = detail::canonical_shuffle(data, opt.seed);
    const std::size_t half = (m + 1) / 2;
    const std::span<const std::size_t> all(rows);
    const Dataset ranking_half = detail::subset_rows(data, all.first(half));
    const std::span<const std::size_t> eval_rows = all.subspan(half);

    CvSummary out;
    out.ranking = rank_variables(ranking_half, target, opt.criterion);
    out.ranking_rows = half;
    out.evaluation_rows = eval_rows.size();

    const std::size_t n_eval = eval_rows.size();
    Eigen::VectorXd y(static_cast<Eigen::Index>(n_eval));
    for (std::size_t r = 0; r < n_eval; ++r) y(static_cast<Eigen::Index>(r)) = data.column(t)[eval_rows[r]];

    double total = 0.0;
    for (std::size_t k : opt.subset_sizes) {
        Eigen::MatrixXd x(static_cast<Eigen::Index>(n_eval), static_cast<Eigen::Index>(k));
        for (std::size_t c = 0; c < k; ++c) {
            const DataColumn& col = data.column(out.ranking.ordered[c].column);
            for (std::size_t r = 0; r < n_eval; ++r) {
                x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[eval_rows[r]];
            }
        }
        double sse = 0.0;
        for (std::size_t fold = 0; fold < opt.folds; ++fold) {
            std::vector<Eigen::Index> train;
            std::vector<Eigen::Index> test;
            for (std::size_t r = 0; r < n_eval; ++r) {
                (r % opt.folds == fold ? test : train).push_back(static_cast<Eigen::Index>(r));
            }
            auto model = opt.regressor();
            model->fit(x(train, Eigen::all), y(train));
            out.ridge_used = out.ridge_used || model->regularized();
            const Eigen::VectorXd pred = model->predict(x(test, Eigen::all));
            sse += (pred - y(test)).squaredNorm();
        }
        const double mse = sse / static_cast<double>(n_eval);
        out.per_size.push_back({k, mse});
        total += mse;
    }
    out.mean_mse = total / static_cast<double>(opt.subset_sizes.size());
    return out;
}

} // namespace minrel
