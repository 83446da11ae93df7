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

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fracwalk/lattice.hpp"
#include "fracwalk/search.hpp"
#include "fracwalk/walk.hpp"

namespace fw = fracwalk;

TEST(DetectPeak, SimpleSeries) {
    const std::vector<double> s = {0.1, 0.4, 0.9, 0.4};
    const auto p = fw::detect_peak(s);
    EXPECT_EQ(p.Q, 2u);
    EXPECT_DOUBLE_EQ(p.P, 0.9);
    EXPECT_TRUE(p.found);
    ASSERT_TRUE(p.first_local_max.has_value());
    EXPECT_EQ(*p.first_local_max, 2u);
}

TEST(DetectPeak, ConstantAndMonotoneHaveNoPeak) {
    EXPECT_FALSE(fw::detect_peak(std::vector<double>(10, 0.3)).found);
    EXPECT_FALSE(fw::detect_peak(std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}).found);
    EXPECT_FALSE(fw::detect_peak(std::vector<double>{0.5, 0.4, 0.3, 0.2}).found);
    EXPECT_THROW(fw::detect_peak(std::vector<double>{}), std::invalid_argument);
}

TEST(DetectPeak, FirstPeriodBeatsLaterRecurrence) {
    // A later, higher recurrence after the series has fallen back.
    const std::vector<double> s = {0.01, 0.2, 0.5, 0.2, 0.05, 0.3, 0.7, 0.3};
    const auto p = fw::detect_peak(s);
    EXPECT_EQ(p.Q, 2u);
    EXPECT_TRUE(p.found);
    EXPECT_EQ(p.period_end, 4u);
    EXPECT_EQ(p.global_Q, 6u);
    EXPECT_DOUBLE_EQ(p.global_P, 0.7);
}

TEST(DetectPeak, SmallWigglesBelowFloorIgnored) {
    const std::vector<double> s = {0.1, 0.15, 0.12, 0.4, 0.9, 0.3, 0.1};
    const auto p = fw::detect_peak(s);
    EXPECT_EQ(p.Q, 4u);
    ASSERT_TRUE(p.first_local_max.has_value());
    EXPECT_EQ(*p.first_local_max, 4u);
}

TEST(Calibration, Examples) {
    EXPECT_NEAR(fw::calibrate_cos_delta(0.5), 1.0, 1e-15);
    EXPECT_NEAR(fw::calibrate_cos_delta(0.2), 0.5, 1e-15);
    EXPECT_NEAR(fw::calibrate_cos_delta(0.184), 0.475, 5e-4);
    EXPECT_THROW(fw::calibrate_cos_delta(0.0), std::invalid_argument);
    EXPECT_THROW(fw::calibrate_cos_delta(1.0), std::invalid_argument);
    EXPECT_THROW(fw::calibrate_cos_delta(-0.1), std::invalid_argument);
}

TEST(Prediction, OptimalAngleHalvesProbability) {
    for (double B : {1.5, 2.0, 3.7, 10.0}) {
        const double c = fw::calibrate_cos_delta(1.0 / (B * B));
        const auto t = fw::predicted_tulsi(B, c, 1000);
        EXPECT_NEAR(t.b_delta_sq, 2.0, 1e-12);
        EXPECT_NEAR(t.P, 0.5, 1e-12);
    }
}

TEST(Prediction, Limits) {
    const double B = 2.5;
    const std::size_t n = 400;
    auto t = fw::predicted_tulsi(B, 1.0, n);
    EXPECT_NEAR(t.P, 1.0 / (B * B), 1e-15);
    EXPECT_NEAR(t.Q, std::numbers::pi * B * 20.0 / 4.0, 1e-12);
    t = fw::predicted_tulsi(1.0, 0.3, n);
    EXPECT_NEAR(t.P, 1.0, 1e-15);
    EXPECT_NEAR(t.Q, std::numbers::pi * 20.0 / (4.0 * 0.3), 1e-12);
    EXPECT_THROW(fw::predicted_tulsi(2.0, 0.0, n), std::invalid_argument);
    EXPECT_THROW(fw::predicted_tulsi(0.5, 0.5, n), std::invalid_argument);
}

TEST(Horizons, Defaults) {
    EXPECT_EQ(fw::default_plain_horizon(1095), static_cast<std::size_t>(std::ceil(3 * std::pow(1095.0, 0.75))));
    EXPECT_EQ(fw::default_tulsi_horizon(100, 0.5), 120u);
    EXPECT_THROW(fw::default_tulsi_horizon(100, 0.0), std::invalid_argument);
}

TEST(PlainSearch, OneBlock) {
    const auto lat = fw::build_gasket({2, 3});
    fw::SearchParams p;
    p.marked = fw::center_vertex(lat);
    p.horizon = 1;
    const auto run = fw::run_plain(lat, p);
    ASSERT_EQ(run.probability_series.size(), 2u);
    EXPECT_NEAR(run.probability_series[0], 1.0 / lat.n_vertices, 1e-15);
    EXPECT_NEAR(run.final_norm, 1.0, 1e-13);
}

TEST(PlainSearch, ParameterChecks) {
    const auto lat = fw::build_gasket({2, 3});
    fw::SearchParams p;
    p.t1 = 0;
    EXPECT_THROW(fw::run_plain(lat, p), std::invalid_argument);
    p.t1 = 2;
    p.horizon = 0;
    EXPECT_THROW(fw::run_plain(lat, p), std::invalid_argument);
    p.horizon = 5;
    p.marked = static_cast<fw::VertexId>(lat.n_vertices);
    EXPECT_THROW(fw::run_plain(lat, p), std::out_of_range);
    p.marked = 0;
    p.cos_delta = 0.0;
    EXPECT_THROW(fw::run_tulsi(lat, p), std::invalid_argument);
    p.cos_delta = 1.5;
    EXPECT_THROW(fw::run_tulsi(lat, p), std::invalid_argument);
}

TEST(PlainSearch, RunInvariants) {
    const auto lat = fw::build_gasket({2, 5});
    fw::SearchParams p;
    p.marked = fw::center_vertex(lat);
    p.horizon = fw::default_plain_horizon(lat.n_vertices);
    const auto run = fw::run_plain(lat, p);
    ASSERT_TRUE(run.peak_found);
    EXPECT_GE(run.Q, 1u);
    EXPECT_LE(run.Q, p.horizon);
    EXPECT_GE(run.P, 0.0);
    EXPECT_LE(run.P, 1.0);
    EXPECT_EQ(run.probability_series[run.Q], run.P);
    EXPECT_DOUBLE_EQ(run.complexity(), run.Q / std::sqrt(run.P));
}

TEST(PlainSearch, StageSixScale) {
    const auto lat = fw::build_gasket({2, 6});
    fw::SearchParams p;
    p.marked = fw::center_vertex(lat);
    p.horizon = fw::default_plain_horizon(lat.n_vertices);
    const auto run = fw::run_plain(lat, p);
    ASSERT_TRUE(run.peak_found);
    const double q_fit = 0.478 * std::pow(1095.0, 0.730);
    const double p_fit = 3.99 * std::pow(1095.0, -0.440);
    EXPECT_NEAR(static_cast<double>(run.Q), q_fit, 0.25 * q_fit);
    EXPECT_NEAR(run.P, p_fit, 0.30 * p_fit);
}

TEST(PlainSearch, EarlyStopKeepsPeak) {
    for (int d : {2, 3}) {
        const auto lat = fw::build_gasket({d, 4});
        fw::SearchParams p;
        p.marked = fw::center_vertex(lat);
        p.horizon = fw::default_plain_horizon(lat.n_vertices);
        const auto full = fw::run_plain(lat, p);
        p.stop_at_period_end = true;
        const auto early = fw::run_plain(lat, p);
        EXPECT_EQ(early.Q, full.Q);
        EXPECT_EQ(early.P, full.P);
        EXPECT_EQ(early.peak_found, full.peak_found);
        EXPECT_LT(early.probability_series.size(), full.probability_series.size());
        for (std::size_t i = 0; i < early.probability_series.size(); ++i) {
            EXPECT_EQ(early.probability_series[i], full.probability_series[i]);
        }
    }
}

TEST(TulsiSearch, ReducesToPlainAtZeroAngle) {
    for (int d : {2, 3}) {
        const auto lat = fw::build_gasket({d, 4});
        fw::SearchParams p;
        p.marked = fw::center_vertex(lat);
        p.horizon = 300;
        const auto plain = fw::run_plain(lat, p);
        p.cos_delta = 1.0;
        const auto ctrl = fw::run_tulsi(lat, p);
        ASSERT_EQ(plain.probability_series.size(), ctrl.probability_series.size());
        for (std::size_t i = 0; i < plain.probability_series.size(); ++i) {
            EXPECT_NEAR(plain.probability_series[i], ctrl.probability_series[i], 1e-12) << i;
        }
        EXPECT_EQ(plain.Q, ctrl.Q);
        // Layer 0 never receives amplitude.
        const auto st = fw::evolve(lat, p, true, 50);
        for (const auto& a : st.layer(0)) EXPECT_EQ(std::abs(a), 0.0);
    }
}

TEST(TulsiSearch, TrapSubspaceAndNorm) {
    const auto lat = fw::build_gasket({2, 5});
    fw::SearchParams p;
    p.marked = fw::center_vertex(lat);
    p.cos_delta = 0.4;
    p.horizon = 2000;
    const auto run = fw::run_tulsi(lat, p);
    EXPECT_LE(run.max_trap_leak, 1e-12);
    EXPECT_NEAR(run.final_norm, 1.0, 1e-11);
}

TEST(TulsiSearch, CalibratedStageSixHalfProbability) {
    const auto lat = fw::build_gasket({2, 6});
    fw::SearchParams p;
    p.marked = fw::center_vertex(lat);
    p.horizon = fw::default_plain_horizon(lat.n_vertices);
    p.stop_at_period_end = true;
    const auto plain = fw::run_plain(lat, p);
    p.cos_delta = std::min(1.0, fw::calibrate_cos_delta(plain.P));
    p.horizon = fw::default_tulsi_horizon(lat.n_vertices, p.cos_delta);
    const auto ctrl = fw::run_tulsi(lat, p);
    ASSERT_TRUE(ctrl.peak_found);
    EXPECT_GE(ctrl.P, 0.42);
    EXPECT_LE(ctrl.P, 0.58);
    EXPECT_LE(ctrl.max_trap_leak, 1e-12);
    // Probability rises over plain search.
    EXPECT_GT(ctrl.P, 2.0 * plain.P);
}

TEST(Evolve, MatchesSeries) {
    const auto lat = fw::build_gasket({2, 4});
    fw::SearchParams p;
    p.marked = 7;
    p.horizon = 40;
    p.cos_delta = 0.6;
    const auto run = fw::run_tulsi(lat, p);
    for (std::size_t b : {0u, 1u, 13u, 40u}) {
        const auto st = fw::evolve(lat, p, true, b);
        EXPECT_NEAR(fw::marked_probability(st, p.marked), run.probability_series[b], 1e-14);
    }
}

TEST(Export, SeriesCsv) {
    fw::SearchRun run;
    run.probability_series = {0.25, 0.5};
    std::ostringstream os;
    fw::write_series_csv(os, run);
    EXPECT_EQ(os.str(), std::string(fw::kSeriesCsvVersion) + "\nblock_index,probability\n0,0.25\n1,0.5\n");
}
