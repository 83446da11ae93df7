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

/*
 * Stage runs and stage sweeps.
 *
 * A stage run builds the gasket, picks the marked vertex, runs plain search
 * and (with the ancilla enabled) calibrates cos(delta) from the plain peak
 * probability before running the controlled search. A sweep runs a range of
 * stages on a bounded worker pool and fits the scaling laws. Everything is
 * deterministic; outputs depend only on the configuration.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracwalk/analysis.hpp"
#include "fracwalk/lattice.hpp"
#include "fracwalk/search.hpp"
#include "fracwalk/walk.hpp"

namespace fracwalk {

enum class MarkedPolicy { Center, Corner, Explicit };

struct ExperimentConfig {
    int embedding_dim = 2;
    int stage_min = 4;
    int stage_max = 4;
    int t1 = 2;
    MarkedPolicy marked_policy = MarkedPolicy::Center;
    VertexId marked_id = 0;  // used with MarkedPolicy::Explicit
    bool ancilla = false;
    std::optional<std::size_t> plain_horizon;
    std::optional<std::size_t> tulsi_horizon;
    int fit_min_stage = 0;  // 0: fit every stage
    bool full_horizon = false;  // otherwise runs stop after the first period
    int workers = 1;
};

inline void check_experiment_config(const ExperimentConfig& cfg) {
    check_stage_config({cfg.embedding_dim, cfg.stage_min});
    check_stage_config({cfg.embedding_dim, cfg.stage_max});
    if (cfg.stage_max < cfg.stage_min) throw std::invalid_argument("stage range must be ascending");
    if (cfg.t1 < 1) throw std::invalid_argument("t1 must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("worker count must be >= 1");
    if (cfg.plain_horizon && *cfg.plain_horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (cfg.tulsi_horizon && *cfg.tulsi_horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

inline VertexId choose_marked(const FractalLattice& lat, const ExperimentConfig& cfg) {
    switch (cfg.marked_policy) {
        case MarkedPolicy::Center: return center_vertex(lat);
        case MarkedPolicy::Corner: return lat.corners.front();
        case MarkedPolicy::Explicit:
            if (cfg.marked_id >= lat.n_vertices) {
                throw std::out_of_range("marked vertex " + std::to_string(cfg.marked_id) +
                                        " out of range (N = " + std::to_string(lat.n_vertices) + ")");
            }
            return cfg.marked_id;
    }
    return 0;
}

struct StageResult {
    int embedding_dim = 0;
    int stage = 0;
    std::size_t n_vertices = 0;
    std::int64_t extent = 0;
    VertexId marked = 0;
    SearchRun plain;
    std::optional<SearchRun> tulsi;
    double cos_delta = 0.0;  // as used by the controlled run
    bool failed = false;
    std::string error;
};

inline StageResult run_stage(const ExperimentConfig& cfg, const FractalLattice& lat) {
    StageResult r;
    r.embedding_dim = lat.dim;
    r.stage = lat.stage;
    r.n_vertices = lat.n_vertices;
    r.extent = lat.extent;
    r.marked = choose_marked(lat, cfg);

    SearchParams p;
    p.t1 = cfg.t1;
    p.marked = r.marked;
    p.horizon = cfg.plain_horizon.value_or(default_plain_horizon(lat.n_vertices));
    p.stop_at_period_end = !cfg.full_horizon;
    r.plain = run_plain(lat, p);

    if (cfg.ancilla) {
        // P0 > 1/2 would give cos(delta) > 1; plain search is then already
        // past the optimum and the control is switched off (cos = 1).
        r.cos_delta = std::min(1.0, calibrate_cos_delta(r.plain.P));
        SearchParams q = p;
        q.cos_delta = r.cos_delta;
        q.horizon = cfg.tulsi_horizon.value_or(default_tulsi_horizon(lat.n_vertices, r.cos_delta));
        r.tulsi = run_tulsi(lat, q);
    }
    return r;
}

inline StageResult run_stage(const ExperimentConfig& cfg, int stage) {
    try {
        const FractalLattice lat = build_gasket({cfg.embedding_dim, stage});
        return run_stage(cfg, lat);
    } catch (const std::exception& e) {
        StageResult r;
        r.embedding_dim = cfg.embedding_dim;
        r.stage = stage;
        r.failed = true;
        r.error = e.what();
        return r;
    }
}

struct SweepFits {
    std::optional<ScalingFit> q_plain;
    std::optional<ScalingFit> p_plain;  // slope is -a
    std::optional<ScalingFit> q_tulsi;
    std::optional<ScalingFit> complexity_tulsi;
    std::optional<ScalingFit> p_tulsi;  // slope should be ~0
    std::optional<DecayFit> p_tulsi_decay;
    std::optional<double> p_tulsi_mean;
    std::optional<double> relation_residual;
    std::optional<DimensionComparison> dims_plain;
    std::optional<DimensionComparison> dims_tulsi;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<StageResult> stages;
    SweepFits fits;
};

namespace detail {

enum class Quantity { QPlain, PPlain, QTulsi, PTulsi, ComplexityTulsi };

inline std::optional<double> quantity(const StageResult& s, Quantity q) {
    if (s.failed) return std::nullopt;
    switch (q) {
        case Quantity::QPlain:
            if (!s.plain.peak_found) return std::nullopt;
            return static_cast<double>(s.plain.Q);
        case Quantity::PPlain:
            if (!s.plain.peak_found) return std::nullopt;
            return s.plain.P;
        default: break;
    }
    if (!s.tulsi || !s.tulsi->peak_found) return std::nullopt;
    switch (q) {
        case Quantity::QTulsi: return static_cast<double>(s.tulsi->Q);
        case Quantity::PTulsi: return s.tulsi->P;
        default: return s.tulsi->complexity();
    }
}

inline std::vector<PowerLawPoint> points_in(const std::vector<StageResult>& stages, Quantity q,
                                            int lo, int hi) {
    std::vector<PowerLawPoint> pts;
    for (const auto& s : stages) {
        if (s.stage < lo || s.stage > hi) continue;
        if (auto v = quantity(s, q)) pts.push_back({static_cast<double>(s.n_vertices), *v, s.stage});
    }
    return pts;
}

// Main fit over [lo, hi]; systematic error from the range extended one stage
// downward, or trimmed one stage when nothing lies below.
inline std::optional<ScalingFit> fit_with_systematic(const std::vector<StageResult>& stages,
                                                     Quantity q, int lo, int hi, int stage_min) {
    const auto pts = points_in(stages, q, lo, hi);
    if (pts.size() < 3) return std::nullopt;
    ScalingFit fit = fit_power_law(pts);
    std::vector<PowerLawPoint> alt;
    if (lo - 1 >= stage_min) {
        alt = points_in(stages, q, lo - 1, hi);
    } else {
        alt = points_in(stages, q, lo + 1, hi);
    }
    if (alt.size() >= 3 && alt.size() != pts.size()) {
        const SystematicError e = systematic_error(fit, fit_power_law(alt));
        fit.systematic_err = e.slope;
        fit.intercept_systematic_err = e.intercept;
    }
    return fit;
}

}  // namespace detail

inline SweepFits compute_fits(const ExperimentConfig& cfg, const std::vector<StageResult>& stages) {
    using detail::Quantity;
    SweepFits f;
    const int lo = std::max(cfg.stage_min, cfg.fit_min_stage);
    const int hi = cfg.stage_max;
    f.q_plain = detail::fit_with_systematic(stages, Quantity::QPlain, lo, hi, cfg.stage_min);
    f.p_plain = detail::fit_with_systematic(stages, Quantity::PPlain, lo, hi, cfg.stage_min);
    if (f.q_plain) f.dims_plain = dimension_comparison(f.q_plain->slope, cfg.embedding_dim);
    if (f.q_plain && f.p_plain) {
        f.relation_residual = exponent_relation_check(-f.p_plain->slope, f.q_plain->slope);
    }
    if (cfg.ancilla) {
        f.q_tulsi = detail::fit_with_systematic(stages, Quantity::QTulsi, lo, hi, cfg.stage_min);
        f.p_tulsi = detail::fit_with_systematic(stages, Quantity::PTulsi, lo, hi, cfg.stage_min);
        f.complexity_tulsi =
            detail::fit_with_systematic(stages, Quantity::ComplexityTulsi, lo, hi, cfg.stage_min);
        if (f.q_tulsi) f.dims_tulsi = dimension_comparison(f.q_tulsi->slope, cfg.embedding_dim);

        std::vector<std::pair<double, double>> decay;
        double sum = 0.0;
        for (const auto& s : stages) {
            if (s.stage < lo || s.stage > hi) continue;
            if (auto v = detail::quantity(s, Quantity::PTulsi)) {
                decay.emplace_back(static_cast<double>(s.extent), *v);
                sum += *v;
            }
        }
        if (!decay.empty()) f.p_tulsi_mean = sum / static_cast<double>(decay.size());
        if (decay.size() >= 4) f.p_tulsi_decay = fit_constant_plus_decay(decay);
    }
    return f;
}

/// Runs every stage of the configured range, `workers` stages at a time.
inline SweepResult run_sweep(const ExperimentConfig& cfg) {
    check_experiment_config(cfg);
    SweepResult result;
    result.config = cfg;
    const int count = cfg.stage_max - cfg.stage_min + 1;
    result.stages.resize(count);

    // Largest stages first so the pool drains evenly.
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            const int stage = cfg.stage_max - i;
            result.stages[stage - cfg.stage_min] = run_stage(cfg, stage);
        }
    };
    const int n_threads = std::min(cfg.workers, count);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    result.fits = compute_fits(cfg, result.stages);
    return result;
}

// ── Output ───────────────────────────────────────────────────────────────────

inline constexpr const char* kSummaryCsvVersion = "# fracwalk sweep-summary v1";

inline void write_summary_row(std::ostream& os, const StageResult& s, const SearchRun& run) {
    os << s.embedding_dim << ',' << s.stage << ',' << s.n_vertices << ',' << run.params.t1 << ','
       << (run.ancilla ? 1 : 0) << ',' << (run.ancilla ? run.params.cos_delta : 0.0) << ','
       << run.Q << ',' << run.P << ',' << run.complexity() << '\n';
}

/// Columns d_E,S,N,t1,ancilla,cos_delta,Q,P,Q_over_sqrtP; failed stages and
/// runs without a peak are noted in comment lines.
inline void write_summary_csv(std::ostream& os, const std::vector<StageResult>& stages) {
    const auto old = os.precision(17);
    os << kSummaryCsvVersion << '\n' << "d_E,S,N,t1,ancilla,cos_delta,Q,P,Q_over_sqrtP\n";
    for (const auto& s : stages) {
        if (s.failed) {
            os << "# stage " << s.stage << " failed: " << s.error << '\n';
            continue;
        }
        write_summary_row(os, s, s.plain);
        if (!s.plain.peak_found) os << "# stage " << s.stage << " plain: no peak within horizon\n";
        if (s.tulsi) {
            write_summary_row(os, s, *s.tulsi);
            if (!s.tulsi->peak_found) {
                os << "# stage " << s.stage << " ancilla: no peak within horizon\n";
            }
        }
    }
    os.precision(old);
}

inline nlohmann::json fit_report(const SweepResult& r) {
    const auto& f = r.fits;
    nlohmann::json j;
    j["embedding_dim"] = r.config.embedding_dim;
    j["stage_range"] = {r.config.stage_min, r.config.stage_max};
    j["fit_min_stage"] = std::max(r.config.stage_min, r.config.fit_min_stage);
    j["t1"] = r.config.t1;
    j["ancilla"] = r.config.ancilla;
    j["spectral_dimension"] = spectral_dimension(r.config.embedding_dim);
    j["hausdorff_dimension"] = hausdorff_dimension(r.config.embedding_dim);
    auto put = [&](const char* key, const std::optional<ScalingFit>& fit) {
        j[key] = fit ? to_json(*fit) : nlohmann::json(nullptr);
    };
    put("Q0", f.q_plain);
    put("P0", f.p_plain);
    if (f.q_plain && f.p_plain) {
        j["exponent_relation"] = {{"a", -f.p_plain->slope},
                                  {"b", f.q_plain->slope},
                                  {"residual", *f.relation_residual}};
    }
    if (f.dims_plain) j["dimension_comparison"] = to_json(*f.dims_plain);
    if (r.config.ancilla) {
        put("Q_delta", f.q_tulsi);
        put("P_delta_power", f.p_tulsi);
        put("Q_delta_over_sqrtP_delta", f.complexity_tulsi);
        j["P_delta_decay"] = f.p_tulsi_decay ? to_json(*f.p_tulsi_decay) : nlohmann::json(nullptr);
        j["P_delta_mean"] = f.p_tulsi_mean ? nlohmann::json(*f.p_tulsi_mean) : nlohmann::json(nullptr);
        if (f.dims_tulsi) j["dimension_comparison_delta"] = to_json(*f.dims_tulsi);
    }
    std::vector<int> failed;
    for (const auto& s : r.stages) {
        if (s.failed) failed.push_back(s.stage);
    }
    j["failed_stages"] = failed;
    return j;
}

}  // namespace fracwalk
