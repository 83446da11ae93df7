// Copyright 2026 The fracwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scaling fits on base-2 logarithms and comparisons of fitted exponents
// against the dimensions of the gasket.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracwalk/lattice.hpp"

namespace fracwalk {

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;  // log2 of the prefactor
    double rms_err = 0.0;
    std::vector<int> fit_range;  // stages used, when known
    double systematic_err = 0.0;
    double intercept_systematic_err = 0.0;

    double prefactor() const { return std::exp2(intercept); }
};

struct PowerLawPoint {
    double n = 0.0;
    double value = 0.0;
    int stage = 0;
};

/// Least squares of log2(value) on log2(n). Points are sorted first so the
/// result does not depend on input order.
inline ScalingFit fit_power_law(std::vector<PowerLawPoint> points) {
    if (points.size() < 3) {
        throw std::invalid_argument("power-law fit needs at least 3 points, got " +
                                    std::to_string(points.size()));
    }
    for (const auto& p : points) {
        if (!(p.n > 0.0) || !(p.value > 0.0)) {
            throw std::invalid_argument("power-law fit needs positive data");
        }
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return std::tie(a.n, a.value, a.stage) < std::tie(b.n, b.value, b.stage);
    });

    const double m = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += std::log2(p.n);
        my += std::log2(p.value);
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        const double dx = std::log2(p.n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(p.value) - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("power-law fit needs distinct abscissae");

    ScalingFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& p : points) {
        const double r = std::log2(p.value) - (fit.intercept + fit.slope * std::log2(p.n));
        ss += r * r;
        fit.fit_range.push_back(p.stage);
    }
    fit.rms_err = std::sqrt(ss / m);
    return fit;
}

inline ScalingFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    std::vector<PowerLawPoint> pts;
    pts.reserve(points.size());
    for (const auto& [n, v] : points) pts.push_back({n, v, 0});
    auto fit = fit_power_law(std::move(pts));
    fit.fit_range.clear();
    return fit;
}

struct SystematicError {
    double slope = 0.0;
    double intercept = 0.0;
    double prefactor = 0.0;
};

/// Spread between a fit and the same fit over a shifted stage range.
inline SystematicError systematic_error(const ScalingFit& a, const ScalingFit& b) {
    return {std::abs(a.slope - b.slope), std::abs(a.intercept - b.intercept),
            std::abs(a.prefactor() - b.prefactor())};
}

/// a - (2b - 1); zero when the two-dimensional-subspace picture holds.
inline double exponent_relation_check(double a, double b) { return a - (2.0 * b - 1.0); }

struct DimensionComparison {
    double b = 0.0;
    double inv_spectral = 0.0;
    double inv_hausdorff = 0.0;
    double dist_spectral = 0.0;
    double dist_hausdorff = 0.0;
    double dist_half = 0.0;
    std::string nearest;  // "1/d_s", "1/d" or "1/2"

    /// True when 1/d_s is strictly nearer than both alternatives.
    bool spectral_wins() const {
        return dist_spectral < dist_hausdorff && dist_spectral < dist_half;
    }
};

inline DimensionComparison dimension_comparison(double b, int embedding_dim) {
    DimensionComparison c;
    c.b = b;
    c.inv_spectral = 1.0 / spectral_dimension(embedding_dim);
    c.inv_hausdorff = 1.0 / hausdorff_dimension(embedding_dim);
    c.dist_spectral = std::abs(b - c.inv_spectral);
    c.dist_hausdorff = std::abs(b - c.inv_hausdorff);
    c.dist_half = std::abs(b - 0.5);
    c.nearest = "1/d_s";
    double best = c.dist_spectral;
    if (c.dist_hausdorff < best) {
        best = c.dist_hausdorff;
        c.nearest = "1/d";
    }
    if (c.dist_half < best) c.nearest = "1/2";
    return c;
}

struct DecayFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double rms = 0.0;
};

namespace detail {

// Linear least squares for value = c0 + c1 * exp(-c2 * x) at fixed c2.
inline DecayFit solve_decay_linear(const std::vector<std::pair<double, double>>& pts, double c2) {
    const double m = static_cast<double>(pts.size());
    double mu = 0.0, my = 0.0;
    for (const auto& [x, y] : pts) {
        mu += std::exp(-c2 * x);
        my += y;
    }
    mu /= m;
    my /= m;
    double suu = 0.0, suy = 0.0;
    for (const auto& [x, y] : pts) {
        const double du = std::exp(-c2 * x) - mu;
        suu += du * du;
        suy += du * (y - my);
    }
    DecayFit f;
    f.c2 = c2;
    // Degenerate basis (c2 = 0 or full decay): constant model.
    if (suu <= 1e-24) {
        f.c0 = my;
        f.c1 = 0.0;
    } else {
        f.c1 = suy / suu;
        f.c0 = my - f.c1 * mu;
    }
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
        const double r = y - (f.c0 + f.c1 * std::exp(-c2 * x));
        ss += r * r;
    }
    f.rms = std::sqrt(ss / m);
    return f;
}

}  // namespace detail

/// Fits value = c0 + c1 exp(-c2 x) with c2 in [0, 1]: a grid scan over c2,
/// refined by golden-section search around the best grid point.
inline DecayFit fit_constant_plus_decay(std::vector<std::pair<double, double>> points) {
    if (points.size() < 4) {
        throw std::invalid_argument("decay fit needs at least 4 points, got " +
                                    std::to_string(points.size()));
    }
    std::sort(points.begin(), points.end());

    constexpr int kGrid = 20000;
    constexpr double kMax = 1.0;
    DecayFit best = detail::solve_decay_linear(points, 0.0);
    int best_i = 0;
    for (int i = 1; i <= kGrid; ++i) {
        const DecayFit f = detail::solve_decay_linear(points, kMax * i / kGrid);
        if (f.rms < best.rms) {
            best = f;
            best_i = i;
        }
    }

    double lo = kMax * std::max(0, best_i - 1) / kGrid;
    double hi = kMax * std::min(kGrid, best_i + 1) / kGrid;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - g * (hi - lo);
    double b = lo + g * (hi - lo);
    DecayFit fa = detail::solve_decay_linear(points, a);
    DecayFit fb = detail::solve_decay_linear(points, b);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (fa.rms < fb.rms) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = detail::solve_decay_linear(points, a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = detail::solve_decay_linear(points, b);
        }
    }
    for (const DecayFit& f : {fa, fb}) {
        if (f.rms < best.rms) best = f;
    }
    return best;
}

// ── JSON ─────────────────────────────────────────────────────────────────────

inline nlohmann::json to_json(const ScalingFit& f) {
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"rms", f.rms_err},
            {"systematic_err", f.systematic_err},
            {"intercept_systematic_err", f.intercept_systematic_err},
            {"range", f.fit_range},
            {"prefactor", f.prefactor()}};
}

inline nlohmann::json to_json(const DecayFit& f) {
    return {{"c0", f.c0}, {"c1", f.c1}, {"c2", f.c2}, {"rms", f.rms}};
}

inline nlohmann::json to_json(const DimensionComparison& c) {
    return {{"b", c.b},
            {"inv_spectral_dimension", c.inv_spectral},
            {"inv_hausdorff_dimension", c.inv_hausdorff},
            {"dist_spectral", c.dist_spectral},
            {"dist_hausdorff", c.dist_hausdorff},
            {"dist_half", c.dist_half},
            {"nearest", c.nearest}};
}

}  // namespace fracwalk
