#pragma once

// Monte-Carlo reproduction of the three toy experiments (multiplication,
// linear, combined). Repetition r uses seed + r; per-repetition values are
// stored by index and reduced in order, so reports are identical for any
// worker count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "minrel/coeff.hpp"
#include "minrel/error.hpp"
#include "minrel/matrix.hpp"
#include "minrel/ranking.hpp"
#include "minrel/synth.hpp"

namespace minrel {

/// Which quantity a cell reports for its (X, Y) pair.
enum class CellKind { rho, rho_negx_y, iota_xy, iota_negy_x, iota_negx_y, iota_yx };

inline std::string cell_label(CellKind k) {
    switch (k) {
    case CellKind::rho: return "rho(X,Y)";
    case CellKind::rho_negx_y: return "rho(-X,Y)";
    case CellKind::iota_xy: return "iota(X,Y)";
    case CellKind::iota_negy_x: return "iota(-Y,X)";
    case CellKind::iota_negx_y: return "iota(-X,Y)";
    case CellKind::iota_yx: return "iota(Y,X)";
    }
    return "?";
}

struct ExperimentCell {
    CellKind kind = CellKind::rho;
    std::string x;
    std::string y;
    double reference = 0.0;
    double tolerance = 0.0;
};

struct CellResult {
    ExperimentCell cell;
    double mean = 0.0;
    double std_error = 0.0;
    bool pass = false;
};

struct CheckResult {
    std::string description;
    bool pass = false;
};

struct ExperimentReport {
    std::string name;
    std::size_t reps = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    std::vector<CellResult> cells;
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : cells) if (!c.pass) return false;
        for (const auto& c : checks) if (!c.pass) return false;
        return true;
    }

    const CellResult& cell(CellKind kind, std::string_view x, std::string_view y) const {
        for (const auto& c : cells) {
            if (c.cell.kind == kind && c.cell.x == x && c.cell.y == y) return c;
        }
        throw InvalidInput("no cell " + cell_label(kind) + " for (" + std::string(x) + "," + std::string(y) + ")");
    }
};

inline double cell_value(CellKind kind, const ColumnTransforms& x, const ColumnTransforms& y) {
    switch (kind) {
    case CellKind::rho: return spearman(x, y).value;
    case CellKind::rho_negx_y: return pearson(x.neg_ranks.ranks, y.ranks.ranks).value;
    case CellKind::iota_xy: return iota_oriented(x, y, Sign::plus, Sign::plus).value;
    case CellKind::iota_negy_x: return iota_oriented(y, x, Sign::minus, Sign::plus).value;
    case CellKind::iota_negx_y: return iota_oriented(x, y, Sign::minus, Sign::plus).value;
    case CellKind::iota_yx: return iota_oriented(y, x, Sign::plus, Sign::plus).value;
    }
    return 0.0;
}

/// Cell layout with reference values and tolerances for one experiment.
struct ExperimentDefinition {
    std::string name;
    Family family = Family::multiplication;
    std::vector<ExperimentCell> cells;
    std::function<std::vector<CheckResult>(const ExperimentReport&)> checks;
};

namespace detail {

struct RowSpec {
    CellKind kind;
    std::vector<double> reference; // one per column pair
    double tolerance;
};

inline std::vector<ExperimentCell> layout(const std::vector<std::pair<std::string, std::string>>& pairs,
                                          const std::vector<RowSpec>& rows) {
    std::vector<ExperimentCell> cells;
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            cells.push_back({row.kind, pairs[j].first, pairs[j].second, row.reference[j], row.tolerance});
        }
    }
    return cells;
}

inline CheckResult greater(const ExperimentReport& r, CellKind k1, std::string_view x1, std::string_view y1,
                           CellKind k2, std::string_view x2, std::string_view y2) {
    const double a = r.cell(k1, x1, y1).mean;
    const double b = r.cell(k2, x2, y2).mean;
    std::string d = cell_label(k1) + "[" + std::string(x1) + "," + std::string(y1) + "] > " + cell_label(k2) +
                    "[" + std::string(x2) + "," + std::string(y2) + "]";
    return {d, a > b};
}

} // namespace detail

/// A = B*C. Zero cells on the independent (B, C) pair get +/-0.02.
inline ExperimentDefinition table2_definition() {
    ExperimentDefinition def{"table2", Family::multiplication, {}, {}};
    const std::vector<std::pair<std::string, std::string>> dep{{"A", "B"}, {"A", "C"}};
    def.cells = detail::layout(dep, {{CellKind::rho, {0.66, 0.66}, 0.02},
                                     {CellKind::iota_xy, {0.99, 0.99}, 0.01},
                                     {CellKind::iota_negy_x, {-0.99, -0.99}, 0.01},
                                     {CellKind::iota_negx_y, {-0.79, -0.79}, 0.03},
                                     {CellKind::iota_yx, {0.77, 0.77}, 0.03}});
    for (CellKind k : {CellKind::rho, CellKind::iota_xy, CellKind::iota_negy_x, CellKind::iota_negx_y,
                       CellKind::iota_yx}) {
        def.cells.push_back({k, "B", "C", 0.0, 0.02});
    }
    def.checks = [](const ExperimentReport& r) {
        return std::vector<CheckResult>{
            detail::greater(r, CellKind::iota_xy, "A", "B", CellKind::iota_yx, "A", "B"),
            detail::greater(r, CellKind::iota_xy, "A", "C", CellKind::iota_yx, "A", "C"),
        };
    };
    return def;
}

/// A = 3B + 2C + D.
inline ExperimentDefinition table3_definition() {
    ExperimentDefinition def{"table3", Family::linear, {}, {}};
    const std::vector<std::pair<std::string, std::string>> pairs{{"A", "B"}, {"A", "C"}, {"A", "D"}};
    def.cells = detail::layout(pairs, {{CellKind::rho, {0.79, 0.52, 0.26}, 0.02},
                                       {CellKind::iota_xy, {0.98, 0.81, 0.46}, 0.03},
                                       {CellKind::iota_negy_x, {-0.98, -0.81, -0.46}, 0.03},
                                       {CellKind::iota_negx_y, {-0.98, -0.81, -0.46}, 0.03},
                                       {CellKind::iota_yx, {0.98, 0.81, 0.46}, 0.03}});
    def.checks = [](const ExperimentReport& r) {
        std::vector<CheckResult> out;
        for (const char* y : {"B", "C", "D"}) {
            const double d = std::abs(r.cell(CellKind::iota_xy, "A", y).mean - r.cell(CellKind::iota_yx, "A", y).mean);
            out.push_back({std::string("|iota(X,Y) - iota(Y,X)|[A,") + y + "] <= 0.02", d <= 0.02});
        }
        return out;
    };
    return def;
}

/// G = A + E, A = B*C*D, sd(E) = 0.15.
inline ExperimentDefinition table4_definition() {
    ExperimentDefinition def{"table4", Family::combined, {}, {}};
    const std::vector<std::pair<std::string, std::string>> pairs{{"A", "B"}, {"A", "C"}, {"A", "D"}, {"A", "G"}};
    def.cells = detail::layout(pairs, {{CellKind::rho, {0.53, 0.53, 0.53, 0.57}, 0.03},
                                       {CellKind::rho_negx_y, {-0.53, -0.53, -0.53, -0.57}, 0.03},
                                       {CellKind::iota_xy, {0.97, 0.97, 0.97, 0.92}, 0.02},
                                       {CellKind::iota_negy_x, {-0.98, -0.98, -0.98, -0.87}, 0.03},
                                       {CellKind::iota_negx_y, {-0.69, -0.69, -0.69, -0.78}, 0.03},
                                       {CellKind::iota_yx, {0.64, 0.64, 0.64, 0.85}, 0.03}});
    for (CellKind k : {CellKind::rho, CellKind::rho_negx_y, CellKind::iota_xy, CellKind::iota_negy_x,
                       CellKind::iota_negx_y, CellKind::iota_yx}) {
        def.cells.push_back({k, "A", "E", 0.0, 0.02});
    }
    def.checks = [](const ExperimentReport& r) {
        std::vector<CheckResult> out;
        for (const char* y : {"B", "C", "D"}) {
            out.push_back(detail::greater(r, CellKind::rho, "A", "G", CellKind::rho, "A", y));
            out.push_back(detail::greater(r, CellKind::iota_xy, "A", y, CellKind::iota_xy, "A", "G"));
        }
        return out;
    };
    return def;
}

inline ExperimentDefinition experiment_definition(std::string_view name) {
    if (name == "table2") return table2_definition();
    if (name == "table3") return table3_definition();
    if (name == "table4") return table4_definition();
    throw InvalidInput("unknown experiment '" + std::string(name) + "'");
}

inline ExperimentReport run_experiment(const ExperimentDefinition& def, std::size_t reps, std::size_t m,
                                       std::uint64_t seed, unsigned workers = 0) {
    if (reps < 1) throw InvalidInput("reps must be at least 1");
    detail::check_rows(m);
    const std::size_t n_cells = def.cells.size();
    std::vector<double> values(reps * n_cells);

    detail::parallel_for(reps, workers, [&](std::size_t rep) {
        const GeneratedDataset g = generate(def.family, m, seed + rep);
        const TransformCache cache = transform_cache(g.data);
        for (std::size_t c = 0; c < n_cells; ++c) {
            const auto& cell = def.cells[c];
            values[rep * n_cells + c] =
                cell_value(cell.kind, cache[g.data.index_of(cell.x)], cache[g.data.index_of(cell.y)]);
        }
    });

    ExperimentReport report{def.name, reps, m, seed, {}, {}};
    for (std::size_t c = 0; c < n_cells; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) sum += values[r * n_cells + c];
        const double mean = sum / static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const double d = values[r * n_cells + c] - mean;
            ss += d * d;
        }
        const double se = reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps)) : 0.0;
        const auto& cell = def.cells[c];
        report.cells.push_back({cell, mean, se, std::abs(mean - cell.reference) <= cell.tolerance});
    }
    if (def.checks) report.checks = def.checks(report);
    return report;
}

inline ExperimentReport run_experiment(std::string_view name, std::size_t reps, std::size_t m, std::uint64_t seed,
                                       unsigned workers = 0) {
    return run_experiment(experiment_definition(name), reps, m, seed, workers);
}

/// Ranking of the non-target columns of a generated family by criterion
/// scores averaged over `reps` datasets.
inline RankingResult averaged_ranking(Family family, std::string_view target, Criterion criterion,
                                      std::size_t reps, std::size_t m, std::uint64_t seed, unsigned workers = 0) {
    if (reps < 1) throw InvalidInput("reps must be at least 1");
    const GeneratedDataset probe = generate(family, 2, seed);
    const std::size_t t = probe.data.index_of(target);
    const std::size_t n = probe.data.cols();
    std::vector<double> values(reps * n);
    detail::parallel_for(reps, workers, [&](std::size_t rep) {
        const GeneratedDataset g = generate(family, m, seed + rep);
        const TransformCache cache = transform_cache(g.data);
        for (std::size_t j = 0; j < n; ++j) {
            values[rep * n + j] = j == t ? 0.0 : criterion_score(criterion, cache[t], cache[j]);
        }
    });
    RankingResult out{std::string(target), criterion, {}};
    for (std::size_t j = 0; j < n; ++j) {
        if (j == t) continue;
        double sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) sum += values[r * n + j];
        out.ordered.push_back({probe.data.column(j).name(), j, sum / static_cast<double>(reps)});
    }
    std::stable_sort(out.ordered.begin(), out.ordered.end(),
                     [](const RankedVariable& a, const RankedVariable& b) { return a.score > b.score; });
    return out;
}

} // namespace minrel
