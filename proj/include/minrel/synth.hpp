#pragma once

// Seeded generators for the toy experiment families.
//
// RNG: std::mt19937_64 seeded with the 64-bit seed. Uniforms are
// (k + 0.5) * 2^-53 from the top 53 bits of each draw, so they lie strictly
// inside (0, 1). Normals use the Box-Muller transform, consuming two
// uniforms per pair and returning the second value on the next call.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "minrel/error.hpp"
#include "minrel/matrix.hpp"

namespace minrel {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal(double mean = 0.0, double sd = 1.0) {
        if (spare_) {
            const double z = *spare_;
            spare_.reset();
            return mean + sd * z;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        return mean + sd * radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

enum class Family { multiplication, linear, combined, triangle };

inline std::string_view family_name(Family f) {
    switch (f) {
    case Family::multiplication: return "multiplication";
    case Family::linear: return "linear";
    case Family::combined: return "combined";
    case Family::triangle: return "triangle";
    }
    return "unknown";
}

inline Family parse_family(std::string_view name) {
    for (Family f : {Family::multiplication, Family::linear, Family::combined, Family::triangle}) {
        if (family_name(f) == name) return f;
    }
    throw InvalidInput("unknown family '" + std::string(name) + "'");
}

struct GeneratedDataset {
    Dataset data;
    Family family = Family::multiplication;
    std::size_t m = 0;
    std::uint64_t seed = 0;
};

/// Standard deviation of the additive noise E in the combined family.
inline constexpr double combined_noise_sd = 0.15;

namespace detail {

inline void check_rows(std::size_t m) {
    if (m < 2) throw InvalidInput("m must be at least 2, got " + std::to_string(m));
}

inline std::vector<double> uniforms(Rng& rng, std::size_t m) {
    std::vector<double> v(m);
    for (double& e : v) e = rng.uniform();
    return v;
}

inline std::vector<double> normals(Rng& rng, std::size_t m, double sd = 1.0) {
    std::vector<double> v(m);
    for (double& e : v) e = rng.normal(0.0, sd);
    return v;
}

inline GeneratedDataset pack(Family f, std::size_t m, std::uint64_t seed,
                             std::vector<std::pair<std::string, std::vector<double>>> cols) {
    std::vector<DataColumn> columns;
    columns.reserve(cols.size());
    for (auto& [name, v] : cols) columns.emplace_back(std::move(v), name);
    return {Dataset(std::move(columns)), f, m, seed};
}

} // namespace detail

/// B, C ~ U(0,1) independent, A = B * C.
inline GeneratedDataset gen_multiplication(std::size_t m, std::uint64_t seed) {
    detail::check_rows(m);
    Rng rng(seed);
    auto b = detail::uniforms(rng, m);
    auto c = detail::uniforms(rng, m);
    std::vector<double> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = b[i] * c[i];
    return detail::pack(Family::multiplication, m, seed, {{"A", a}, {"B", b}, {"C", c}});
}

/// B, C, D ~ N(0,1) independent, A = 3B + 2C + D.
inline GeneratedDataset gen_linear(std::size_t m, std::uint64_t seed) {
    detail::check_rows(m);
    Rng rng(seed);
    auto b = detail::normals(rng, m);
    auto c = detail::normals(rng, m);
    auto d = detail::normals(rng, m);
    std::vector<double> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = 3.0 * b[i] + 2.0 * c[i] + d[i];
    return detail::pack(Family::linear, m, seed, {{"A", a}, {"B", b}, {"C", c}, {"D", d}});
}

/// B, C, D ~ U(0,1), A = B*C*D, E ~ N(0, 0.15^2), G = A + E.
inline GeneratedDataset gen_combined(std::size_t m, std::uint64_t seed) {
    detail::check_rows(m);
    Rng rng(seed);
    auto b = detail::uniforms(rng, m);
    auto c = detail::uniforms(rng, m);
    auto d = detail::uniforms(rng, m);
    auto e = detail::normals(rng, m, combined_noise_sd);
    std::vector<double> a(m);
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i) {
        a[i] = b[i] * c[i] * d[i];
        g[i] = a[i] + e[i];
    }
    return detail::pack(Family::combined, m, seed,
                        {{"A", a}, {"B", b}, {"C", c}, {"D", d}, {"E", e}, {"G", g}});
}

/// (X, Y) uniform on the triangle -0.5 <= x <= y <= 0.5.
inline GeneratedDataset gen_triangle_pair(std::size_t m, std::uint64_t seed) {
    detail::check_rows(m);
    Rng rng(seed);
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double u = rng.uniform();
        const double v = rng.uniform();
        x[i] = std::min(u, v) - 0.5;
        y[i] = std::max(u, v) - 0.5;
    }
    return detail::pack(Family::triangle, m, seed, {{"X", x}, {"Y", y}});
}

inline GeneratedDataset generate(Family f, std::size_t m, std::uint64_t seed) {
    switch (f) {
    case Family::multiplication: return gen_multiplication(m, seed);
    case Family::linear: return gen_linear(m, seed);
    case Family::combined: return gen_combined(m, seed);
    case Family::triangle: return gen_triangle_pair(m, seed);
    }
    throw InvalidInput("unknown family");
}

/// A relevance benchmark: target T = product of k uniform factors F1..Fk,
/// a noisy copy P = T + N(0, 0.15^2) that is not a predictor, and
/// independent U(0,1) noise columns Z1.. filling up to `n_vars` columns.
struct RelevanceBenchmark {
    Dataset data;
    std::string target;
    std::vector<std::string> relevant;
};

inline RelevanceBenchmark gen_relevance_benchmark(std::size_t m, std::uint64_t seed, std::size_t n_vars = 20,
                                                  std::size_t factors = 3) {
    detail::check_rows(m);
    if (factors < 1 || n_vars < factors + 2) {
        throw InvalidInput("need n_vars >= factors + 2 and factors >= 1");
    }
    Rng rng(seed);
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    std::vector<double> target(m, 1.0);
    RelevanceBenchmark out;
    out.target = "T";
    for (std::size_t k = 0; k < factors; ++k) {
        auto f = detail::uniforms(rng, m);
        for (std::size_t i = 0; i < m; ++i) target[i] *= f[i];
        const std::string name = "F" + std::to_string(k + 1);
        out.relevant.push_back(name);
        cols.emplace_back(name, std::move(f));
    }
    std::vector<double> proxy = detail::normals(rng, m, combined_noise_sd);
    for (std::size_t i = 0; i < m; ++i) proxy[i] += target[i];
    cols.emplace_back("P", std::move(proxy));
    for (std::size_t k = 0; cols.size() + 1 < n_vars; ++k) {
        cols.emplace_back("Z" + std::to_string(k + 1), detail::uniforms(rng, m));
    }
    cols.insert(cols.begin(), {"T", std::move(target)});
    out.data = detail::pack(Family::multiplication, m, seed, std::move(cols)).data;
    return out;
}

} // namespace minrel
