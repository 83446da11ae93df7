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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "fracwalk/lattice.hpp"

namespace fw = fracwalk;

namespace {

// Independent count: d_E+1 copies of the previous stage, each pair of
// copies sharing exactly one vertex.
std::uint64_t count_by_recurrence(int d, int stage) {
    std::uint64_t n = static_cast<std::uint64_t>(d) + 1;
    for (int s = 1; s <= stage; ++s) n = (d + 1) * n - static_cast<std::uint64_t>(d) * (d + 1) / 2;
    return n;
}

}  // namespace

TEST(ClosedForm, MatchesRecurrence) {
    for (int d : {2, 3}) {
        for (int s = 0; s <= 20; ++s) {
            EXPECT_EQ(fw::vertex_count_closed_form({d, s}), count_by_recurrence(d, s)) << d << " " << s;
        }
    }
}

TEST(ClosedForm, KnownValues) {
    EXPECT_EQ(fw::vertex_count_closed_form({2, 1}), 6u);
    EXPECT_EQ(fw::vertex_count_closed_form({2, 4}), 123u);
    EXPECT_EQ(fw::vertex_count_closed_form({2, 6}), 1095u);
    EXPECT_EQ(fw::vertex_count_closed_form({2, 14}), 7174455u);
    EXPECT_EQ(fw::vertex_count_closed_form({3, 3}), 130u);
    EXPECT_EQ(fw::vertex_count_closed_form({3, 4}), 514u);
    EXPECT_EQ(fw::vertex_count_closed_form({3, 10}), 2097154u);
}

TEST(ClosedForm, OverflowIsReported) {
    EXPECT_NO_THROW(fw::vertex_count_closed_form({3, 31}));
    EXPECT_THROW(fw::vertex_count_closed_form({3, 32}), std::overflow_error);
    EXPECT_THROW(fw::vertex_count_closed_form({2, 60}), std::overflow_error);
}

TEST(Dimensions, Values) {
    EXPECT_NEAR(fw::hausdorff_dimension(2), 1.5849625, 1e-7);
    EXPECT_NEAR(fw::spectral_dimension(2), 1.3652124, 1e-7);
    EXPECT_NEAR(fw::hausdorff_dimension(3), 2.0, 1e-7);
    EXPECT_NEAR(fw::spectral_dimension(3), 1.5474112, 1e-7);
    // A line is its own fractal: d = d_s = 1 at d_E = 1.
    EXPECT_NEAR(fw::hausdorff_dimension(1), 1.0, 1e-15);
    EXPECT_NEAR(fw::spectral_dimension(1), 1.0, 1e-15);
}

TEST(StageConfig, Rejected) {
    EXPECT_THROW(fw::build_gasket({4, 3}), std::invalid_argument);
    EXPECT_THROW(fw::build_gasket({2, 0}), std::invalid_argument);
    EXPECT_THROW(fw::build_gasket({2, -1}), std::invalid_argument);
}

TEST(Gasket, CountsAndDegree) {
    for (int d : {2, 3}) {
        const int max_stage = d == 2 ? 8 : 5;
        for (int s = 1; s <= max_stage; ++s) {
            const auto lat = fw::build_gasket({d, s});
            EXPECT_EQ(lat.n_vertices, count_by_recurrence(d, s));
            EXPECT_EQ(lat.k, 2 * d);
            EXPECT_EQ(lat.extent, std::int64_t{1} << s);
            const auto report = fw::validate(lat);
            EXPECT_TRUE(report.ok()) << report;
        }
    }
}

TEST(Gasket, StageOneIsRegular) {
    const auto lat = fw::build_gasket({2, 1});
    ASSERT_EQ(lat.n_vertices, 6u);
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        std::set<int> labels;
        for (int j = 0; j < lat.k; ++j) labels.insert(lat.direction(static_cast<fw::VertexId>(v), j));
        EXPECT_EQ(labels.size(), 4u);
    }
}

TEST(Gasket, CoordinatesAreDistinct) {
    const auto lat = fw::build_gasket({3, 4});
    std::set<fw::Coord> seen(lat.coords.begin(), lat.coords.end());
    EXPECT_EQ(seen.size(), lat.n_vertices);
}

TEST(Gasket, ShiftFollowsLabels) {
    const auto lat = fw::build_gasket({2, 4});
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        const auto id = static_cast<fw::VertexId>(v);
        const int j = lat.slot_of(id, 0);
        if (j < 0 || lat.is_wrap[lat.flat(id, j)]) continue;
        const auto p = lat.partner_of(id, j);
        EXPECT_EQ(lat.coords[p.vertex][0], lat.coords[v][0] + 2);
        EXPECT_EQ(lat.coords[p.vertex][1], lat.coords[v][1]);
        EXPECT_EQ(lat.direction(p.vertex, p.slot), 3);
    }
}

TEST(Gasket, CornerWrapLinks) {
    for (int d : {2, 3}) {
        const auto lat = fw::build_gasket({d, 3});
        ASSERT_EQ(lat.corners.size(), static_cast<std::size_t>(d + 1));
        std::set<std::pair<fw::VertexId, fw::VertexId>> links;
        for (std::size_t f = 0; f < lat.n_slots(); ++f) {
            if (!lat.is_wrap[f]) continue;
            const auto a = static_cast<fw::VertexId>(f / lat.k);
            const auto b = static_cast<fw::VertexId>(lat.partner[f] / lat.k);
            EXPECT_TRUE(lat.is_corner(a));
            EXPECT_TRUE(lat.is_corner(b));
            EXPECT_TRUE(lat.is_wrap[lat.partner[f]]);
            links.insert({std::min(a, b), std::max(a, b)});
        }
        // Every pair of corners is joined once.
        EXPECT_EQ(links.size(), static_cast<std::size_t>(d * (d + 1) / 2));
    }
}

TEST(Gasket, CenterVertex) {
    const auto s1 = fw::build_gasket({2, 1});
    const auto c = fw::center_vertex(s1);
    EXPECT_EQ(s1.coords[c][0], 2);
    EXPECT_EQ(s1.coords[c][1], 0);
    for (int d : {2, 3}) {
        for (int s = 2; s <= 5; ++s) {
            const auto lat = fw::build_gasket({d, s});
            EXPECT_FALSE(lat.is_corner(fw::center_vertex(lat)));
        }
    }
}

TEST(Census, TwoDimensional) {
    const auto lat = fw::build_gasket({2, 4});
    const auto census = fw::classify_vertices(lat);
    EXPECT_EQ(census.total(), lat.n_vertices);
    // Junction vertices join two sub-triangles meeting at a point.
    const std::size_t each = (lat.n_vertices - 3) / 3;
    ASSERT_EQ(census.internal.size(), 3u);
    EXPECT_EQ(census.internal.at({0, 1, 2, 3}), each);
    EXPECT_EQ(census.internal.at({2, 3, 4, 5}), each);
    EXPECT_EQ(census.internal.at({0, 1, 4, 5}), each);
    ASSERT_EQ(census.corner.size(), 3u);
    EXPECT_EQ(census.corner.at({0, 1, 3, 4}), 1u);
    EXPECT_EQ(census.corner.at({0, 2, 3, 5}), 1u);
    EXPECT_EQ(census.corner.at({1, 2, 4, 5}), 1u);
}

TEST(Census, ThreeDimensional) {
    const auto lat = fw::build_gasket({3, 3});
    const auto census = fw::classify_vertices(lat);
    EXPECT_EQ(census.total(), lat.n_vertices);
    // One internal class per tetrahedron edge orientation, one per corner.
    EXPECT_EQ(census.internal.size(), 6u);
    EXPECT_EQ(census.corner.size(), 4u);
    for (const auto& [set, n] : census.internal) {
        EXPECT_EQ(set.size(), 6u);
        EXPECT_EQ(n, (lat.n_vertices - 4) / 6);
    }
}

TEST(Hypercubic, Ring) {
    const auto lat = fw::build_hypercubic(1, 8);
    EXPECT_EQ(lat.n_vertices, 8u);
    EXPECT_EQ(lat.k, 2);
    EXPECT_TRUE(fw::validate(lat).ok());
    const auto p = lat.partner_of(7, lat.slot_of(7, 0));
    EXPECT_EQ(p.vertex, 0u);
    EXPECT_EQ(lat.direction(p.vertex, p.slot), 1);
}

TEST(Hypercubic, Torus) {
    const auto lat = fw::build_hypercubic(2, 4);
    EXPECT_EQ(lat.n_vertices, 16u);
    EXPECT_TRUE(fw::validate(lat).ok()) << fw::validate(lat);
    const auto p = lat.partner_of(0, lat.slot_of(0, 0));
    EXPECT_EQ(p.vertex, 1u);
    EXPECT_EQ(lat.direction(p.vertex, p.slot), 2);
}

TEST(Validation, DetectsBrokenInvolution) {
    auto lat = fw::build_gasket({2, 3});
    const std::size_t f = lat.flat(5, 2);
    const std::size_t old_partner = lat.partner[f];
    lat.partner[f] = lat.partner[lat.flat(5, 1)];
    const auto report = fw::validate(lat);
    EXPECT_FALSE(report.ok());
    const auto* inv = report.find("involution");
    ASSERT_NE(inv, nullptr);
    EXPECT_FALSE(inv->passed);
    // The first offending slot in scan order is named.
    const std::size_t first = std::min(f, old_partner);
    const std::string name =
        "(" + std::to_string(first / lat.k) + "," + std::to_string(first % lat.k) + ")";
    EXPECT_NE(inv->detail.find(name), std::string::npos) << inv->detail;
}

TEST(Validation, DetectsFixedPoint) {
    auto lat = fw::build_gasket({2, 2});
    const std::size_t f = lat.flat(3, 0);
    const std::size_t g = lat.partner[f];
    // Make f and its old partner fixed points; the table stays an involution.
    lat.partner[f] = static_cast<fw::FlatIndex>(f);
    lat.partner[g] = static_cast<fw::FlatIndex>(g);
    const auto report = fw::validate(lat);
    EXPECT_TRUE(report.find("involution")->passed);
    EXPECT_FALSE(report.find("no-fixed-points")->passed);
}

TEST(Validation, DetectsWrongLabel) {
    auto lat = fw::build_gasket({2, 2});
    lat.slot_dir[lat.flat(4, 0)] = static_cast<std::uint8_t>(lat.slot_dir[lat.flat(4, 1)]);
    EXPECT_FALSE(fw::validate(lat).ok());
}

TEST(Dump, Format) {
    const auto lat = fw::build_gasket({2, 1});
    std::ostringstream os;
    fw::write_lattice_dump(os, lat);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "2 1 6 4");
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        long long v, x, y, slot, label, pv, ps, wrap;
        ASSERT_TRUE(fields >> v >> x >> y >> slot >> label >> pv >> ps >> wrap) << line;
        std::string extra;
        EXPECT_FALSE(fields >> extra);
        EXPECT_EQ(v, rows / 4);
        EXPECT_EQ(slot, rows % 4);
        EXPECT_EQ(lat.partner[lat.flat(static_cast<fw::VertexId>(v), static_cast<int>(slot))],
                  static_cast<fw::FlatIndex>(pv * 4 + ps));
        ++rows;
    }
    EXPECT_EQ(rows, 24);
}

TEST(Dump, ThreeDimensionalHasZ) {
    const auto lat = fw::build_gasket({3, 1});
    std::ostringstream os;
    fw::write_lattice_dump(os, lat);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "3 1 10 6");
    std::getline(in, line);
    std::istringstream fields(line);
    int n = 0;
    std::string tok;
    while (fields >> tok) ++n;
    EXPECT_EQ(n, 9);
}
