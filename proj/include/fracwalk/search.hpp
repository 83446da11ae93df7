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
 * Spatial search drivers.
 *
 * Plain search alternates the sign-flip oracle with t1 walk steps,
 * [W^t1 R]^t2, starting from the uniform state.
 *
 * Ancilla-controlled search runs on two copies of the walk space, one per
 * ancilla value. Each oracle block applies
 *
 *     X_delta (ancilla) -> R controlled on |1> -> X_delta^dagger
 *       -> W^t1 controlled on |1> -> Zbar (ancilla)
 *
 * with X_delta = [[c, s], [-s, c]] and Zbar = diag(-1, 1). The initial state
 * is |1> (x) |s>. At c = 1 the ancilla |0> layer stays exactly zero and the
 * evolution coincides with plain search.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracwalk/lattice.hpp"
#include "fracwalk/walk.hpp"

namespace fracwalk {

struct SearchParams {
    int t1 = 2;
    VertexId marked = 0;
    double cos_delta = 0.0;  // 0 selects plain search
    std::size_t horizon = 1;
    bool stop_at_period_end = false;  // end the run once the first period is over
};

struct PeakInfo {
    std::size_t Q = 0;
    double P = 0.0;
    bool found = false;
    std::size_t period_end = 0;  // first index where the series has fallen back
    std::size_t global_Q = 0;    // global maximum over indices >= 1
    double global_P = 0.0;
    std::optional<std::size_t> first_local_max;
};

struct SearchRun {
    SearchParams params;
    bool ancilla = false;
    std::vector<double> probability_series;  // entry i: after i oracle blocks
    std::size_t Q = 0;
    double P = 0.0;
    bool peak_found = false;
    PeakInfo peak;               // full peak diagnostics
    double max_trap_leak = 0.0;  // largest |a0| off the marked vertex, any block
    double final_norm = 0.0;

    double complexity() const { return static_cast<double>(Q) / std::sqrt(P); }
};

/// Fraction of the running maximum below which the first period is over.
inline constexpr double kPeriodDropFraction = 0.25;

/// Peak of the first period of the (approximately periodic) series.
///
/// The first period ends at the first index where the series falls below
/// kPeriodDropFraction times its running maximum, once that maximum exceeds
/// twice the initial value. (Q, P) is the maximum over indices [1, end), or
/// over the whole series when it never falls back. No peak is found when
/// that maximum is not strictly above both neighbours (monotone or flat
/// series, or a maximum at the last entry). The global maximum and
/// the first strict local maximum above twice the initial value are
/// reported as diagnostics.
inline PeakInfo detect_peak(std::span<const double> series) {
    if (series.empty()) throw std::invalid_argument("empty probability series");
    PeakInfo info;
    if (series.size() == 1) {
        info.P = info.global_P = series[0];
        return info;
    }
    const double floor = 2.0 * series[0];

    info.global_Q = 1;
    for (std::size_t i = 2; i < series.size(); ++i) {
        if (series[i] > series[info.global_Q]) info.global_Q = i;
    }
    info.global_P = series[info.global_Q];

    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        if (series[i] > floor && series[i] > series[i - 1] && series[i] > series[i + 1]) {
            info.first_local_max = i;
            break;
        }
    }

    std::size_t best = 1;
    std::size_t end = series.size();
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i] > series[best]) best = i;
        if (series[best] > floor && series[i] < kPeriodDropFraction * series[best]) {
            end = i;
            break;
        }
    }
    info.Q = best;
    info.P = series[best];
    info.period_end = end;
    info.found = best + 1 < series.size() && series[best] > series[best - 1] &&
                 series[best] > series[best + 1];
    return info;
}

inline std::size_t default_plain_horizon(std::size_t n_vertices) {
    return static_cast<std::size_t>(std::ceil(3.0 * std::pow(static_cast<double>(n_vertices), 0.75)));
}

inline std::size_t default_tulsi_horizon(std::size_t n_vertices, double cos_delta) {
    if (!(cos_delta > 0.0)) throw std::invalid_argument("cos_delta must be positive");
    return static_cast<std::size_t>(
        std::ceil(6.0 * std::sqrt(static_cast<double>(n_vertices)) / cos_delta));
}

/// Optimal ancilla angle (B^2 - 1)^{-1/2} with B^2 = 1/P0, i.e. sqrt(P0/(1-P0)).
/// Exceeds 1 when P0 > 1/2; callers clamp before use.
inline double calibrate_cos_delta(double p0) {
    if (!(p0 > 0.0 && p0 < 1.0)) {
        throw std::invalid_argument("P0 must lie in (0, 1), got " + std::to_string(p0));
    }
    return std::sqrt(p0 / (1.0 - p0));
}

struct TulsiPrediction {
    double b_delta_sq;
    double P;
    double Q;
};

/// Two-dimensional-subspace estimate of the controlled search outcome.
inline TulsiPrediction predicted_tulsi(double B, double cos_delta, std::size_t n_vertices) {
    if (B < 1.0) throw std::invalid_argument("B must be >= 1");
    if (cos_delta == 0.0) throw std::invalid_argument("cos_delta must be nonzero");
    const double bd2 = 1.0 + (B * B - 1.0) * cos_delta * cos_delta;
    const double q = std::numbers::pi * std::sqrt(bd2) * std::sqrt(static_cast<double>(n_vertices)) /
                     (4.0 * cos_delta);
    return {bd2, 1.0 / bd2, q};
}

namespace detail {

inline void check_search_params(const FractalLattice& lat, const SearchParams& p) {
    if (p.t1 < 1) throw std::invalid_argument("t1 must be >= 1");
    if (!(p.cos_delta >= 0.0 && p.cos_delta <= 1.0)) {
        throw std::invalid_argument("cos_delta must lie in [0, 1]");
    }
    if (p.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (p.marked >= lat.n_vertices) {
        throw std::out_of_range("marked vertex " + std::to_string(p.marked) + " out of range");
    }
}

// Applies [[c, s], [-s, c]] to every (layer 0, layer 1) amplitude pair.
inline void rotate_ancilla(WalkState& st, double c, double s) {
    auto l0 = st.layer(0);
    auto l1 = st.layer(1);
    for (std::size_t i = 0; i < l0.size(); ++i) {
        const Amplitude a0 = l0[i];
        const Amplitude a1 = l1[i];
        l0[i] = c * a0 + s * a1;
        l1[i] = -s * a0 + c * a1;
    }
}

}  // namespace detail

/// Incremental plain search; one call to block() is one oracle call.
class PlainSearch {
public:
    PlainSearch(const FractalLattice& lat, const SearchParams& p)
        : params_(p), walk_(lat), state_(uniform_state(lat)) {
        detail::check_search_params(lat, p);
    }

    void block() {
        walk_.oracle(state_, params_.marked, 0);
        walk_.walk(state_, 0, params_.t1);
    }

    double probability() const { return marked_probability(state_, params_.marked); }
    const WalkState& state() const { return state_; }

private:
    SearchParams params_;
    FlipFlopWalk walk_;
    WalkState state_;
};

class TulsiSearch {
public:
    TulsiSearch(const FractalLattice& lat, const SearchParams& p)
        : params_(p), walk_(lat), state_(uniform_state(lat, 2)) {
        detail::check_search_params(lat, p);
        if (!(p.cos_delta > 0.0)) throw std::invalid_argument("ancilla search needs cos_delta > 0");
        cos_ = p.cos_delta;
        sin_ = std::sqrt(std::max(0.0, 1.0 - cos_ * cos_));
    }

    void block() {
        detail::rotate_ancilla(state_, cos_, sin_);
        walk_.oracle(state_, params_.marked, 1);
        detail::rotate_ancilla(state_, cos_, -sin_);
        walk_.walk(state_, 1, params_.t1);
        for (auto& a : state_.layer(0)) a = -a;
    }

    double probability() const { return marked_probability(state_, params_.marked); }
    const WalkState& state() const { return state_; }

    /// Largest ancilla-|0> amplitude away from the marked vertex.
    double trap_leak() const {
        const auto l0 = state_.layer(0);
        const std::size_t k = static_cast<std::size_t>(state_.k);
        const std::size_t lo = static_cast<std::size_t>(params_.marked) * k;
        double worst = 0.0;
        for (std::size_t i = 0; i < l0.size(); ++i) {
            if (i >= lo && i < lo + k) continue;
            worst = std::max(worst, std::abs(l0[i]));
        }
        return worst;
    }

private:
    SearchParams params_;
    FlipFlopWalk walk_;
    WalkState state_;
    double cos_ = 1.0;
    double sin_ = 0.0;
};

namespace detail {

template <class Engine>
SearchRun drive(Engine& engine, const SearchParams& p, bool ancilla, bool track_trap) {
    SearchRun run;
    run.params = p;
    run.ancilla = ancilla;
    run.probability_series.reserve(p.horizon + 1);
    run.probability_series.push_back(engine.probability());
    const double floor = 2.0 * run.probability_series.front();
    double running_max = 0.0;
    for (std::size_t t = 0; t < p.horizon; ++t) {
        engine.block();
        const double prob = engine.probability();
        run.probability_series.push_back(prob);
        if constexpr (requires { engine.trap_leak(); }) {
            if (track_trap) run.max_trap_leak = std::max(run.max_trap_leak, engine.trap_leak());
        }
        running_max = std::max(running_max, prob);
        if (p.stop_at_period_end && running_max > floor &&
            prob < kPeriodDropFraction * running_max) {
            break;
        }
    }
    const PeakInfo peak = detect_peak(run.probability_series);
    run.Q = peak.Q;
    run.P = peak.P;
    run.peak_found = peak.found;
    run.peak = peak;
    run.final_norm = std::sqrt(engine.state().norm_squared());
    return run;
}

}  // namespace detail

/// Plain search from the uniform state for params.horizon oracle blocks.
inline SearchRun run_plain(const FractalLattice& lat, SearchParams p) {
    p.cos_delta = 0.0;
    PlainSearch engine(lat, p);
    return detail::drive(engine, p, false, false);
}

/// Ancilla-controlled search; records the trap leak after every block.
inline SearchRun run_tulsi(const FractalLattice& lat, const SearchParams& p, bool track_trap = true) {
    TulsiSearch engine(lat, p);
    return detail::drive(engine, p, true, track_trap);
}

/// State after `blocks` oracle blocks (used for probability snapshots).
inline WalkState evolve(const FractalLattice& lat, const SearchParams& p, bool ancilla,
                        std::size_t blocks) {
    if (ancilla) {
        TulsiSearch engine(lat, p);
        for (std::size_t t = 0; t < blocks; ++t) engine.block();
        return engine.state();
    }
    SearchParams plain = p;
    plain.cos_delta = 0.0;
    PlainSearch engine(lat, plain);
    for (std::size_t t = 0; t < blocks; ++t) engine.block();
    return engine.state();
}

// ── Export ───────────────────────────────────────────────────────────────────

inline constexpr const char* kSeriesCsvVersion = "# fracwalk probability-series v1";

inline void write_series_csv(std::ostream& os, const SearchRun& run) {
    const auto old = os.precision(17);
    os << kSeriesCsvVersion << '\n' << "block_index,probability\n";
    for (std::size_t i = 0; i < run.probability_series.size(); ++i) {
        os << i << ',' << run.probability_series[i] << '\n';
    }
    os.precision(old);
}

}  // namespace fracwalk
