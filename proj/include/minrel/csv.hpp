#pragma once

// CSV dialect: comma separated, first row is the header, '.' decimal point,
// no quoting, no locale. Lines starting with '#' are comments. Missing
// values are empty cells or NA/NaN/Inf spellings; unparseable text is
// always an error.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "minrel/error.hpp"
#include "minrel/matrix.hpp"

namespace minrel::csv {

enum class NaPolicy { error, drop_rows };

inline std::string_view na_policy_name(NaPolicy p) { return p == NaPolicy::error ? "error" : "drop-rows"; }

inline NaPolicy parse_na_policy(std::string_view s) {
    if (s == "error") return NaPolicy::error;
    if (s == "drop-rows") return NaPolicy::drop_rows;
    throw InvalidInput("unknown NA policy '" + std::string(s) + "'");
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline bool is_na_token(std::string_view s) {
    std::string lower(s);
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!lower.empty() && (lower[0] == '+' || lower[0] == '-')) lower.erase(0, 1);
    return lower.empty() || lower == "na" || lower == "nan" || lower == "inf" || lower == "infinity";
}

// nullopt for a missing value; throws for text that is not a number.
inline std::optional<double> parse_cell(std::string_view s, std::size_t line, std::string_view column) {
    if (is_na_token(s)) return std::nullopt;
    double v = 0.0;
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec == std::errc::result_out_of_range) return std::nullopt;
    if (ec != std::errc() || ptr != body.data() + body.size()) {
        throw InvalidInput("line " + std::to_string(line) + ", column '" + std::string(column) +
                           "': cannot parse '" + std::string(s) + "' as a number");
    }
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

} // namespace detail

struct ReadResult {
    Dataset data;
    std::size_t dropped_rows = 0;
};

inline ReadResult read(std::istream& in, NaPolicy na = NaPolicy::error) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty() || line.front() == '#') continue;
        for (auto f : detail::split(line)) header.emplace_back(f);
        break;
    }
    if (header.empty()) throw InvalidInput("empty CSV input");
    // Strip a UTF-8 byte order mark.
    if (header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c].empty()) throw InvalidInput("header column " + std::to_string(c + 1) + " has no name");
    }

    std::vector<std::vector<double>> cols(header.size());
    std::size_t dropped = 0;
    std::vector<double> row(header.size());
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty() || line.front() == '#') continue;
        const auto fields = detail::split(line);
        if (fields.size() != header.size()) {
            throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                               " fields, got " + std::to_string(fields.size()));
        }
        bool missing = false;
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const auto v = detail::parse_cell(fields[c], line_no, header[c]);
            if (!v) {
                if (na == NaPolicy::error) {
                    throw InvalidInput("line " + std::to_string(line_no) + ", column '" + header[c] +
                                       "': missing or non-finite value '" + std::string(fields[c]) + "'");
                }
                missing = true;
            } else {
                row[c] = *v;
            }
        }
        if (missing) {
            ++dropped;
            continue;
        }
        for (std::size_t c = 0; c < row.size(); ++c) cols[c].push_back(row[c]);
    }

    std::vector<DataColumn> columns;
    columns.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) columns.emplace_back(std::move(cols[c]), header[c]);
    return {Dataset(std::move(columns)), dropped};
}

inline ReadResult read_file(const std::string& path, NaPolicy na = NaPolicy::error) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read(in, na);
}

inline ReadResult read_string(std::string_view text, NaPolicy na = NaPolicy::error) {
    std::istringstream in{std::string(text)};
    return read(in, na);
}

/// `digits` significant digits, locale independent.
inline std::string format_number(double v, int digits = 12) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

inline void write(std::ostream& out, const Dataset& data, int digits = 12) {
    const auto names = data.names();
    for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t c = 0; c < data.cols(); ++c) out << (c ? "," : "") << format_number(data.column(c)[r], digits);
        out << '\n';
    }
}

} // namespace minrel::csv
