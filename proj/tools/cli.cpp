#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "minrel/coeff.hpp"
#include "minrel/csv.hpp"
#include "minrel/error.hpp"
#include "minrel/experiment.hpp"
#include "minrel/matrix.hpp"
#include "minrel/ranking.hpp"
#include "minrel/synth.hpp"

namespace minrel::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

// Options shared by several subcommands. `workers` is deliberately left out
// of the recorded configuration: it never changes results.
struct Common {
    std::string input = "-";
    std::string output = "-";
    std::string format = "csv";
    std::string na = "error";
    unsigned workers = 0;
};

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw InvalidInput("unknown format '" + s + "'");
}

std::string num(double v) { return csv::format_number(v); }

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

Sign parse_sign(const std::string& s) {
    if (s == "+" || s == "+1" || s == "1" || s == "pos") return Sign::plus;
    if (s == "-" || s == "-1" || s == "neg") return Sign::minus;
    throw InvalidInput("bad orientation sign '" + s + "' (use +, -, +1, -1, pos or neg)");
}

std::pair<Sign, Sign> parse_orientation(const std::string& s) {
    const auto parts = split_list(s);
    if (parts.size() != 2) throw InvalidInput("--orientation takes two signs, e.g. +,-");
    return {parse_sign(parts[0]), parse_sign(parts[1])};
}

std::string sign_str(Sign s) { return s == Sign::plus ? "+" : "-"; }

// "2-10" or "2,3,5"
std::vector<std::size_t> parse_sizes(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& part : split_list(s)) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoul(part));
            } else {
                const std::size_t lo = std::stoul(part.substr(0, dash));
                const std::size_t hi = std::stoul(part.substr(dash + 1));
                if (hi < lo) throw InvalidInput("empty size range '" + part + "'");
                for (std::size_t k = lo; k <= hi; ++k) out.push_back(k);
            }
        } catch (const std::logic_error&) {
            throw InvalidInput("bad subset size list '" + s + "'");
        }
    }
    return out;
}

csv::ReadResult load(const Common& c) {
    const auto na = csv::parse_na_policy(c.na);
    if (c.input == "-") return csv::read(std::cin, na);
    return csv::read_file(c.input, na);
}

// Emits the recorded configuration as leading comment lines.
void csv_header(std::ostream& os, const std::string& command, const Json& config) {
    os << "# minrel " << command << '\n';
    for (const auto& [key, value] : config.items()) {
        os << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    }
}

Json with_config(const std::string& command, const Json& config) {
    Json j;
    j["command"] = command;
    j["config"] = config;
    return j;
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.output == "-") {
        out << text;
        out.flush();
        if (!out) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw IoError("cannot open '" + c.output + "' for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing '" + c.output + "'");
}

Json io_config(const Common& c) {
    Json cfg;
    cfg["input"] = c.input;
    cfg["na"] = c.na;
    cfg["ties"] = "average";
    cfg["format"] = c.format;
    return cfg;
}

void add_common(CLI::App* app, Common& c, bool with_input = true) {
    if (with_input) {
        app->add_option("-i,--input", c.input, "Input CSV file ('-' for stdin)");
        app->add_option("--na", c.na, "Missing-value policy: error or drop-rows");
    }
    app->add_option("-o,--output", c.output, "Output file ('-' for stdout)");
    app->add_option("--format", c.format, "Output format: csv or json");
    app->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
}

// ---------------------------------------------------------------------------

struct CoeffArgs {
    Common common;
    std::string x;
    std::string y;
    std::string metric = "iota";
    std::string orientation = "+,+";
    bool strict = false;
};

CoefficientValue coeff_value(const std::string& metric, std::span<const double> x, std::span<const double> y) {
    if (metric == "p_leq_hat") return {p_leq_hat(x, y), false};
    if (metric == "iota_raw_indicator") return iota_raw_indicator(x, y);
    if (metric == "iota_raw_squared") return iota_raw_squared(x, y);
    switch (parse_metric(metric)) {
    case Metric::pearson: return pearson(x, y);
    case Metric::spearman: return spearman(x, y);
    case Metric::iota: return rank_minrelation(x, y);
    case Metric::iota2: return iota2(x, y);
    case Metric::max_iota_sq: return {max_iota_sq(x, y), false};
    case Metric::minrel_simple: return minrel_simple(x, y);
    }
    throw InvalidInput("unknown metric '" + metric + "'");
}

std::string cmd_coeff(const CoeffArgs& a, bool& degenerate) {
    const Format fmt = parse_format(a.common.format);
    const auto [sx, sy] = parse_orientation(a.orientation);
    const auto loaded = load(a.common);
    const Dataset& d = loaded.data;
    if (d.cols() < 2 && (a.x.empty() || a.y.empty())) throw InvalidInput("input needs at least 2 columns");
    const std::string xn = a.x.empty() ? d.column(std::size_t{0}).name() : a.x;
    const std::string yn = a.y.empty() ? d.column(std::size_t{1}).name() : a.y;

    auto oriented = [](std::span<const double> v, Sign s) {
        std::vector<double> out(v.begin(), v.end());
        if (s == Sign::minus) for (double& e : out) e = -e;
        return out;
    };
    const auto xv = oriented(d.column(xn).values(), sx);
    const auto yv = oriented(d.column(yn).values(), sy);
    const CoefficientValue v = coeff_value(a.metric, xv, yv);
    degenerate = v.degenerate;

    Json cfg = io_config(a.common);
    cfg["metric"] = a.metric;
    cfg["x"] = xn;
    cfg["y"] = yn;
    cfg["orientation"] = sign_str(sx) + "," + sign_str(sy);
    cfg["strict"] = a.strict;
    cfg["dropped_rows"] = loaded.dropped_rows;

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("coeff", cfg);
        j["metric"] = a.metric;
        j["value"] = v.value;
        j["degenerate"] = v.degenerate;
        j["m"] = d.rows();
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "coeff", cfg);
        os << "metric,x,y,value,degenerate,m\n";
        os << a.metric << ',' << xn << ',' << yn << ',' << num(v.value) << ',' << bool_str(v.degenerate) << ','
           << d.rows() << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct MatrixArgs {
    Common common;
    std::string metric = "iota";
};

std::string cmd_matrix(const MatrixArgs& a) {
    const Format fmt = parse_format(a.common.format);
    const Metric metric = parse_metric(a.metric);
    const auto loaded = load(a.common);
    const CoefficientMatrix mat = pairwise_matrix(loaded.data, metric, a.common.workers);

    Json cfg = io_config(a.common);
    cfg["metric"] = std::string(metric_name(metric));
    cfg["dropped_rows"] = loaded.dropped_rows;
    cfg["m"] = loaded.data.rows();

    std::ostringstream os;
    const std::size_t n = mat.n();
    if (fmt == Format::json) {
        Json j = with_config("matrix", cfg);
        j["metric"] = std::string(metric_name(metric));
        j["names"] = mat.names;
        Json values = Json::object();
        Json mask = Json::object();
        for (std::size_t i = 0; i < n; ++i) {
            Json row = Json::object();
            Json mrow = Json::object();
            for (std::size_t k = 0; k < n; ++k) {
                row[mat.names[k]] = mat.at(i, k);
                mrow[mat.names[k]] = mat.is_degenerate(i, k);
            }
            values[mat.names[i]] = row;
            mask[mat.names[i]] = mrow;
        }
        j["values"] = values;
        j["degenerate"] = mask;
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "matrix", cfg);
        auto block = [&](auto cell) {
            os << "name";
            for (const auto& nm : mat.names) os << ',' << nm;
            os << '\n';
            for (std::size_t i = 0; i < n; ++i) {
                os << mat.names[i];
                for (std::size_t k = 0; k < n; ++k) os << ',' << cell(i, k);
                os << '\n';
            }
        };
        block([&](std::size_t i, std::size_t k) { return num(mat.at(i, k)); });
        os << "# degenerate\n";
        block([&](std::size_t i, std::size_t k) { return std::string(mat.is_degenerate(i, k) ? "1" : "0"); });
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct RankArgs {
    Common common;
    std::string target;
    std::string criterion = "max_iota_sq";
    std::string relevant;
    std::string family;
    std::size_t reps = 200;
    std::size_t m = 1000;
    std::uint64_t seed = 1;
};

std::string cmd_rank(const RankArgs& a) {
    const Format fmt = parse_format(a.common.format);
    const Criterion crit = parse_criterion(a.criterion);
    if (a.target.empty()) throw InvalidInput("--target is required");

    Json cfg;
    RankingResult ranking;
    if (!a.family.empty()) {
        const Family fam = parse_family(a.family);
        ranking = averaged_ranking(fam, a.target, crit, a.reps, a.m, a.seed, a.common.workers);
        cfg["family"] = a.family;
        cfg["reps"] = a.reps;
        cfg["m"] = a.m;
        cfg["seed"] = a.seed;
        cfg["format"] = a.common.format;
    } else {
        const auto loaded = load(a.common);
        ranking = rank_variables(loaded.data, a.target, crit);
        cfg = io_config(a.common);
        cfg["dropped_rows"] = loaded.dropped_rows;
    }
    cfg["target"] = a.target;
    cfg["criterion"] = std::string(criterion_name(crit));

    std::optional<RelevanceEval> eval;
    if (!a.relevant.empty()) {
        eval = average_position(ranking, split_list(a.relevant));
        cfg["relevant"] = a.relevant;
    }

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("rank", cfg);
        j["target"] = ranking.target;
        j["criterion"] = std::string(criterion_name(crit));
        Json rows = Json::array();
        for (std::size_t p = 0; p < ranking.ordered.size(); ++p) {
            rows.push_back({{"position", p + 1}, {"name", ranking.ordered[p].name}, {"score", ranking.ordered[p].score}});
        }
        j["ranking"] = rows;
        if (eval) j["avg_position"] = eval->avg_position;
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "rank", cfg);
        os << "position,name,score\n";
        for (std::size_t p = 0; p < ranking.ordered.size(); ++p) {
            os << p + 1 << ',' << ranking.ordered[p].name << ',' << num(ranking.ordered[p].score) << '\n';
        }
        if (eval) os << "# avg_position=" << num(eval->avg_position) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
    Common common;
    std::string name;
    std::size_t reps = 200;
    std::size_t m = 1000;
    std::uint64_t seed = 1;
};

std::string cmd_experiment(const ExperimentArgs& a) {
    const Format fmt = parse_format(a.common.format);
    const ExperimentReport rep = run_experiment(a.name, a.reps, a.m, a.seed, a.common.workers);

    Json cfg;
    cfg["experiment"] = a.name;
    cfg["reps"] = a.reps;
    cfg["m"] = a.m;
    cfg["seed"] = a.seed;
    cfg["rng"] = "mt19937_64, seed + repetition";
    cfg["format"] = a.common.format;

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("experiment", cfg);
        Json cells = Json::array();
        for (const auto& c : rep.cells) {
            cells.push_back({{"row", cell_label(c.cell.kind)},
                             {"x", c.cell.x},
                             {"y", c.cell.y},
                             {"mean", c.mean},
                             {"std_error", c.std_error},
                             {"reference", c.cell.reference},
                             {"tolerance", c.cell.tolerance},
                             {"pass", c.pass}});
        }
        Json checks = Json::array();
        for (const auto& c : rep.checks) checks.push_back({{"check", c.description}, {"pass", c.pass}});
        j["cells"] = cells;
        j["checks"] = checks;
        j["all_pass"] = rep.all_pass();
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "experiment", cfg);
        os << "row,x,y,mean,std_error,reference,tolerance,status\n";
        for (const auto& c : rep.cells) {
            os << cell_label(c.cell.kind) << ',' << c.cell.x << ',' << c.cell.y << ',' << num(c.mean) << ','
               << num(c.std_error) << ',' << num(c.cell.reference) << ',' << num(c.cell.tolerance) << ','
               << (c.pass ? "PASS" : "FAIL") << '\n';
        }
        os << "# checks\n";
        for (const auto& c : rep.checks) os << "# " << (c.pass ? "PASS " : "FAIL ") << c.description << '\n';
        os << "# overall=" << (rep.all_pass() ? "PASS" : "FAIL") << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct GenArgs {
    Common common;
    std::string family;
    std::size_t m = 1000;
    std::uint64_t seed = 1;
    std::size_t vars = 20;
    std::size_t factors = 3;
};

std::string cmd_gen(const GenArgs& a) {
    const Format fmt = parse_format(a.common.format);
    Json cfg;
    cfg["family"] = a.family;
    cfg["m"] = a.m;
    cfg["seed"] = a.seed;
    Dataset data;
    if (a.family == "relevance") {
        const auto b = gen_relevance_benchmark(a.m, a.seed, a.vars, a.factors);
        data = b.data;
        cfg["vars"] = a.vars;
        cfg["factors"] = a.factors;
        cfg["target"] = b.target;
        std::string rel;
        for (const auto& r : b.relevant) rel += (rel.empty() ? "" : ";") + r;
        cfg["relevant"] = rel;
    } else {
        data = generate(parse_family(a.family), a.m, a.seed).data;
    }

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("gen", cfg);
        Json cols = Json::object();
        for (const auto& c : data.columns()) cols[c.name()] = std::vector<double>(c.values().begin(), c.values().end());
        j["columns"] = cols;
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "gen", cfg);
        csv::write(os, data);
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct CompareArgs {
    Common common;
    std::string relevant_file;
    std::size_t benchmark = 0;
    std::size_t m = 1000;
    std::uint64_t seed = 1;
    std::size_t vars = 20;
    std::size_t min_relevant = 1;
    std::string first = "max_iota_sq";
    std::string second = "rho2";
};

std::vector<TargetSpec> read_relevant_sets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput("relevant-set file '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw InvalidInput("relevant-set file must be a JSON object {target: [names...]}");
    std::vector<TargetSpec> out;
    for (const auto& [target, names] : j.items()) {
        if (!names.is_array()) throw InvalidInput("relevant set of '" + target + "' must be an array");
        TargetSpec spec{target, {}};
        for (const auto& n : names) {
            if (!n.is_string()) throw InvalidInput("relevant set of '" + target + "' must hold strings");
            spec.relevant.push_back(n.get<std::string>());
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::string cmd_compare(const CompareArgs& a) {
    const Format fmt = parse_format(a.common.format);
    const Criterion first = parse_criterion(a.first);
    const Criterion second = parse_criterion(a.second);

    Json cfg;
    struct Row {
        std::string dataset;
        TargetOutcome outcome;
    };
    std::vector<Row> rows;
    WinLossRecord total{first, second, {}, 0, 0, 0};

    if (a.benchmark > 0) {
        cfg["benchmark"] = a.benchmark;
        cfg["m"] = a.m;
        cfg["seed"] = a.seed;
        cfg["vars"] = a.vars;
        std::vector<WinLossRecord> recs(a.benchmark);
        detail::parallel_for(a.benchmark, a.common.workers, [&](std::size_t k) {
            const auto b = gen_relevance_benchmark(a.m, a.seed + k, a.vars, 2 + k % 3);
            recs[k] = compare_criteria(b.data, {{b.target, b.relevant}}, first, second, a.min_relevant);
        });
        for (std::size_t k = 0; k < recs.size(); ++k) {
            for (const auto& t : recs[k].targets) {
                rows.push_back({"bench" + std::to_string(k), t});
                total.add(t);
            }
        }
        cfg["format"] = a.common.format;
    } else {
        if (a.relevant_file.empty()) throw InvalidInput("compare needs --relevant-file or --benchmark");
        const auto loaded = load(a.common);
        const auto specs = read_relevant_sets(a.relevant_file);
        const auto rec = compare_criteria(loaded.data, specs, first, second, a.min_relevant);
        for (const auto& t : rec.targets) {
            rows.push_back({a.common.input, t});
            total.add(t);
        }
        cfg = io_config(a.common);
        cfg["relevant_file"] = a.relevant_file;
        cfg["dropped_rows"] = loaded.dropped_rows;
    }
    cfg["first"] = std::string(criterion_name(first));
    cfg["second"] = std::string(criterion_name(second));
    cfg["min_relevant"] = a.min_relevant;

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("compare", cfg);
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back({{"dataset", r.dataset},
                           {"target", r.outcome.target},
                           {"avg_position_first", r.outcome.avg_position_first},
                           {"avg_position_second", r.outcome.avg_position_second},
                           {"outcome", std::string(outcome_name(r.outcome.outcome))}});
        }
        j["targets"] = arr;
        j["wins"] = total.wins;
        j["losses"] = total.losses;
        j["draws"] = total.draws;
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "compare", cfg);
        os << "dataset,target,avg_position_first,avg_position_second,outcome\n";
        for (const auto& r : rows) {
            os << r.dataset << ',' << r.outcome.target << ',' << num(r.outcome.avg_position_first) << ','
               << num(r.outcome.avg_position_second) << ',' << outcome_name(r.outcome.outcome) << '\n';
        }
        os << "# wins=" << total.wins << " losses=" << total.losses << " draws=" << total.draws << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

struct CvArgs {
    Common common;
    std::string target;
    std::string criterion = "max_iota_sq";
    std::string versus;
    std::string sizes = "2-10";
    std::size_t folds = 10;
    std::uint64_t seed = 1;
};

std::string cmd_cv(const CvArgs& a) {
    const Format fmt = parse_format(a.common.format);
    if (a.target.empty()) throw InvalidInput("--target is required");
    const auto loaded = load(a.common);

    std::vector<Criterion> crits{parse_criterion(a.criterion)};
    if (!a.versus.empty()) crits.push_back(parse_criterion(a.versus));

    std::vector<CvSummary> results;
    for (Criterion c : crits) {
        CvOptions opt;
        opt.criterion = c;
        opt.subset_sizes = parse_sizes(a.sizes);
        opt.folds = a.folds;
        opt.seed = a.seed;
        results.push_back(split_half_cv_eval(loaded.data, a.target, opt));
    }

    Json cfg = io_config(a.common);
    cfg["target"] = a.target;
    cfg["criterion"] = a.criterion;
    if (!a.versus.empty()) cfg["versus"] = a.versus;
    cfg["sizes"] = a.sizes;
    cfg["folds"] = a.folds;
    cfg["seed"] = a.seed;
    cfg["regressor"] = "least_squares";
    cfg["ridge"] = LeastSquaresRegressor::ridge;
    cfg["dropped_rows"] = loaded.dropped_rows;

    std::string verdict;
    if (results.size() == 2) {
        const double m1 = results[0].mean_mse;
        const double m2 = results[1].mean_mse;
        verdict = m1 < m2 ? "win" : (m2 < m1 ? "loss" : "draw");
    }

    std::ostringstream os;
    if (fmt == Format::json) {
        Json j = with_config("cv", cfg);
        Json arr = Json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            Json per = Json::array();
            for (const auto& s : results[i].per_size) per.push_back({{"size", s.size}, {"mse", s.mse}});
            arr.push_back({{"criterion", std::string(criterion_name(crits[i]))},
                           {"per_size", per},
                           {"mean_mse", results[i].mean_mse},
                           {"ridge_used", results[i].ridge_used},
                           {"ranking_rows", results[i].ranking_rows},
                           {"evaluation_rows", results[i].evaluation_rows}});
        }
        j["results"] = arr;
        if (!verdict.empty()) j["outcome"] = verdict;
        os << j.dump(2) << '\n';
    } else {
        csv_header(os, "cv", cfg);
        os << "criterion,size,mse\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            for (const auto& s : results[i].per_size) {
                os << criterion_name(crits[i]) << ',' << s.size << ',' << num(s.mse) << '\n';
            }
            os << criterion_name(crits[i]) << ",mean," << num(results[i].mean_mse) << '\n';
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            os << "# " << criterion_name(crits[i]) << " ridge_used=" << bool_str(results[i].ridge_used) << '\n';
        }
        if (!verdict.empty()) os << "# outcome=" << verdict << '\n';
    }
    return os.str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank minrelation coefficient toolkit", "minrel"};
    app.require_subcommand(1);

    CoeffArgs coeff;
    auto* c_coeff = app.add_subcommand("coeff", "Coefficient between two columns");
    add_common(c_coeff, coeff.common);
    c_coeff->add_option("--x", coeff.x, "First column (default: first)");
    c_coeff->add_option("--y", coeff.y, "Second column (default: second)");
    c_coeff->add_option("--metric", coeff.metric,
                        "pearson, spearman, iota, iota2, max_iota_sq, minrel_simple, p_leq_hat, "
                        "iota_raw_indicator or iota_raw_squared");
    c_coeff->add_option("--orientation", coeff.orientation, "Signs applied to x and y, e.g. +,-");
    c_coeff->add_flag("--strict", coeff.strict, "Exit 3 on a degenerate result");

    MatrixArgs matrix;
    auto* c_matrix = app.add_subcommand("matrix", "Pairwise coefficient matrix");
    add_common(c_matrix, matrix.common);
    c_matrix->add_option("--metric", matrix.metric, "pearson, spearman, iota, iota2, max_iota_sq or minrel_simple");

    RankArgs rank;
    auto* c_rank = app.add_subcommand("rank", "Rank variables against a target");
    add_common(c_rank, rank.common);
    c_rank->add_option("--target", rank.target, "Target column")->required();
    c_rank->add_option("--criterion", rank.criterion, "rho2, max_iota_sq or iota_sq");
    c_rank->add_option("--relevant", rank.relevant, "Comma-separated relevant columns");
    c_rank->add_option("--family", rank.family, "Rank a generated family with rep-averaged scores instead of --input");
    c_rank->add_option("--reps", rank.reps, "Repetitions for --family");
    c_rank->add_option("--m", rank.m, "Samples per repetition for --family");
    c_rank->add_option("--seed", rank.seed, "Base seed for --family");

    ExperimentArgs exp;
    auto* c_exp = app.add_subcommand("experiment", "Monte-Carlo toy experiment (table2, table3, table4)");
    add_common(c_exp, exp.common, false);
    c_exp->add_option("name", exp.name, "table2, table3 or table4")->required();
    c_exp->add_option("--reps", exp.reps, "Repetitions");
    c_exp->add_option("--m", exp.m, "Samples per repetition");
    c_exp->add_option("--seed", exp.seed, "Base seed");

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen", "Generate a synthetic dataset as CSV");
    add_common(c_gen, gen.common, false);
    c_gen->add_option("family", gen.family, "multiplication, linear, combined, triangle or relevance")->required();
    c_gen->add_option("--m", gen.m, "Rows");
    c_gen->add_option("--seed", gen.seed, "Seed");
    c_gen->add_option("--vars", gen.vars, "Columns for the relevance family");
    c_gen->add_option("--factors", gen.factors, "Product factors for the relevance family");

    CompareArgs cmp;
    auto* c_cmp = app.add_subcommand("compare", "Win/loss of two ranking criteria on known relevant sets");
    add_common(c_cmp, cmp.common);
    c_cmp->add_option("--relevant-file", cmp.relevant_file, "JSON object mapping target -> relevant columns");
    c_cmp->add_option("--benchmark", cmp.benchmark, "Run N generated relevance benchmarks instead of --input");
    c_cmp->add_option("--m", cmp.m, "Rows per benchmark dataset");
    c_cmp->add_option("--seed", cmp.seed, "Base seed for --benchmark");
    c_cmp->add_option("--vars", cmp.vars, "Columns per benchmark dataset");
    c_cmp->add_option("--min-relevant", cmp.min_relevant, "Skip targets with fewer relevant columns");
    c_cmp->add_option("--first", cmp.first, "First criterion");
    c_cmp->add_option("--second", cmp.second, "Second criterion");

    CvArgs cv;
    auto* c_cv = app.add_subcommand("cv", "Split-half ranking + k-fold least-squares evaluation");
    add_common(c_cv, cv.common);
    c_cv->add_option("--target", cv.target, "Target column")->required();
    c_cv->add_option("--criterion", cv.criterion, "Ranking criterion");
    c_cv->add_option("--versus", cv.versus, "Second criterion; reports win/loss by mean MSE");
    c_cv->add_option("--sizes", cv.sizes, "Subset sizes, e.g. 2-10 or 2,4,6");
    c_cv->add_option("--folds", cv.folds, "Cross-validation folds");
    c_cv->add_option("--seed", cv.seed, "Seed for the row split");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        std::string text;
        const Common* common = nullptr;
        int code = exit_ok;
        if (c_coeff->parsed()) {
            bool degenerate = false;
            text = cmd_coeff(coeff, degenerate);
            common = &coeff.common;
            if (degenerate && coeff.strict) code = exit_degenerate;
        } else if (c_matrix->parsed()) {
            text = cmd_matrix(matrix);
            common = &matrix.common;
        } else if (c_rank->parsed()) {
            text = cmd_rank(rank);
            common = &rank.common;
        } else if (c_exp->parsed()) {
            text = cmd_experiment(exp);
            common = &exp.common;
        } else if (c_gen->parsed()) {
            text = cmd_gen(gen);
            common = &gen.common;
        } else if (c_cmp->parsed()) {
            text = cmd_compare(cmp);
            common = &cmp.common;
        } else {
            text = cmd_cv(cv);
            common = &cv.common;
        }
        emit(*common, out, text);
        if (code == exit_degenerate) err << "minrel: degenerate result (--strict)\n";
        return code;
    } catch (const InvalidInput& e) {
        err << "minrel: " << e.what() << '\n';
        return exit_validation;
    } catch (const IoError& e) {
        err << "minrel: " << e.what() << '\n';
        return exit_io;
    }
}

} // namespace minrel::cli
