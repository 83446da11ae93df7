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
 * Sierpinski gasket and periodic hypercubic lattices for flip-flop walks.
 *
 * A lattice is stored as a flat slot table: vertex v owns slots
 * v*k .. v*k+k-1, each slot carries a direction label (ascending within a
 * vertex) and the flat index of its partner slot. The partner map is an
 * involution without fixed points, so it alone defines the shift operator.
 *
 * Gaskets are embedded on an integer grid:
 *   d_E = 2: corners (0,0), (2^{S+1},0), (2^S,2^S); unit links are (+-2,0)
 *            and (+-1,+-1).
 *   d_E = 3: corners 2^S * {(0,0,0),(1,1,0),(1,0,1),(0,1,1)}; unit links are
 *            the twelve face-centred vectors.
 * Corner vertices are made degree regular by one wraparound link per corner
 * pair, labelled with the direction opposite to the geometric corner-to-corner
 * direction.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fracwalk {

using Coord = std::array<std::int64_t, 3>;
using VertexId = std::uint32_t;
using FlatIndex = std::uint32_t;

inline constexpr FlatIndex kNoSlot = std::numeric_limits<FlatIndex>::max();

struct StageConfig {
    int embedding_dim = 2;
    int stage = 1;

    std::int64_t linear_extent() const { return std::int64_t{1} << stage; }
};

inline void check_stage_config(const StageConfig& cfg) {
    if (cfg.embedding_dim != 2 && cfg.embedding_dim != 3) {
        throw std::invalid_argument("embedding dimension must be 2 or 3, got " +
                                    std::to_string(cfg.embedding_dim));
    }
    if (cfg.stage < 1) {
        throw std::invalid_argument("stage must be >= 1, got " + std::to_string(cfg.stage));
    }
    // Coordinates reach 2^{S+1}; keep well inside int64.
    if (cfg.stage > 40) {
        throw std::invalid_argument("stage " + std::to_string(cfg.stage) + " is out of range");
    }
}

// ── Direction tables ─────────────────────────────────────────────────────────

struct DirectionTable {
    int dim = 0;
    std::vector<Coord> displacement;
    std::vector<int> opposite;

    int size() const { return static_cast<int>(displacement.size()); }

    /// Label whose displacement equals `d` exactly, or -1.
    int label_of(const Coord& d) const {
        for (int i = 0; i < size(); ++i) {
            if (displacement[i] == d) return i;
        }
        return -1;
    }

    /// Label whose displacement is a positive multiple of `d`, or -1.
    int label_along(const Coord& d) const {
        for (int i = 0; i < size(); ++i) {
            const Coord& u = displacement[i];
            std::int64_t scale = 0;
            bool ok = true;
            for (int c = 0; c < 3 && ok; ++c) {
                if (u[c] == 0) {
                    ok = d[c] == 0;
                } else if (d[c] % u[c] != 0) {
                    ok = false;
                } else {
                    const std::int64_t t = d[c] / u[c];
                    if (t <= 0 || (scale != 0 && t != scale)) ok = false;
                    scale = t;
                }
            }
            if (ok && scale > 0) return i;
        }
        return -1;
    }

    static DirectionTable gasket2d() {
        DirectionTable t;
        t.dim = 2;
        t.displacement = {{2, 0, 0}, {1, 1, 0}, {-1, 1, 0}, {-2, 0, 0}, {-1, -1, 0}, {1, -1, 0}};
        t.opposite = {3, 4, 5, 0, 1, 2};
        return t;
    }

    static DirectionTable gasket3d() {
        DirectionTable t;
        t.dim = 3;
        const std::array<Coord, 6> half = {
            Coord{1, 1, 0}, Coord{1, 0, 1}, Coord{0, 1, 1},
            Coord{1, -1, 0}, Coord{1, 0, -1}, Coord{0, 1, -1}};
        for (const auto& h : half) t.displacement.push_back(h);
        for (const auto& h : half) t.displacement.push_back({-h[0], -h[1], -h[2]});
        for (int i = 0; i < 12; ++i) t.opposite.push_back((i + 6) % 12);
        return t;
    }

    /// Axis directions: label i is +e_i, label i+d is -e_i.
    static DirectionTable hypercubic(int d) {
        DirectionTable t;
        t.dim = d;
        t.displacement.assign(2 * d, Coord{0, 0, 0});
        for (int i = 0; i < d; ++i) {
            t.displacement[i][i] = 1;
            t.displacement[i + d][i] = -1;
        }
        for (int i = 0; i < 2 * d; ++i) t.opposite.push_back((i + d) % (2 * d));
        return t;
    }
};

// ── Lattice ──────────────────────────────────────────────────────────────────

enum class LatticeKind { Gasket, Hypercubic };

struct SlotRef {
    VertexId vertex;
    int slot;
    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct FractalLattice {
    LatticeKind kind = LatticeKind::Gasket;
    int dim = 2;              // embedding dimension (d_E) or hypercubic d
    int stage = 0;            // gasket stage S; 0 for hypercubic lattices
    std::int64_t extent = 0;  // linear extent L
    std::size_t n_vertices = 0;
    int k = 0;
    DirectionTable directions;
    std::vector<Coord> coords;
    std::vector<std::uint8_t> slot_dir;  // n_vertices * k
    std::vector<FlatIndex> partner;      // n_vertices * k, flat slot index
    std::vector<std::uint8_t> is_wrap;   // n_vertices * k
    std::vector<VertexId> corners;

    std::size_t n_slots() const { return n_vertices * static_cast<std::size_t>(k); }
    std::size_t flat(VertexId v, int j) const { return static_cast<std::size_t>(v) * k + j; }
    int direction(VertexId v, int j) const { return slot_dir[flat(v, j)]; }
    SlotRef partner_of(VertexId v, int j) const {
        const FlatIndex p = partner[flat(v, j)];
        return {static_cast<VertexId>(p / k), static_cast<int>(p % k)};
    }
    /// Slot index carrying `label` at `v`, or -1.
    int slot_of(VertexId v, int label) const {
        for (int j = 0; j < k; ++j) {
            if (slot_dir[flat(v, j)] == label) return j;
        }
        return -1;
    }
    bool is_corner(VertexId v) const {
        return std::find(corners.begin(), corners.end(), v) != corners.end();
    }
};

// ── Closed forms ─────────────────────────────────────────────────────────────

/// (d_E+1)((d_E+1)^S + 1)/2, throwing std::overflow_error past uint64.
inline std::uint64_t vertex_count_closed_form(const StageConfig& cfg) {
    if (cfg.embedding_dim < 1 || cfg.stage < 0) {
        throw std::invalid_argument("invalid stage configuration");
    }
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t base = static_cast<std::uint64_t>(cfg.embedding_dim) + 1;
    std::uint64_t power = 1;
    for (int s = 0; s < cfg.stage; ++s) {
        if (power > kMax / base) throw std::overflow_error("vertex count overflows uint64");
        power *= base;
    }
    if (power == kMax) throw std::overflow_error("vertex count overflows uint64");
    const std::uint64_t p1 = power + 1;
    // One of base, p1 is even.
    if (base % 2 == 0) {
        const std::uint64_t h = base / 2;
        if (p1 > kMax / h) throw std::overflow_error("vertex count overflows uint64");
        return h * p1;
    }
    const std::uint64_t h = p1 / 2;
    if (h > kMax / base) throw std::overflow_error("vertex count overflows uint64");
    return base * h;
}

inline double hausdorff_dimension(int embedding_dim) {
    if (embedding_dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    return std::log(embedding_dim + 1.0) / std::log(2.0);
}

inline double spectral_dimension(int embedding_dim) {
    if (embedding_dim < 1) throw std::invalid_argument("embedding dimension must be >= 1");
    return 2.0 * std::log(embedding_dim + 1.0) / std::log(embedding_dim + 3.0);
}

// ── Construction ─────────────────────────────────────────────────────────────

namespace detail {

struct CoordHash {
    std::size_t operator()(const Coord& c) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : c) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

/// Accumulates links per (vertex, label) and resolves them into the flat
/// slot table once all links are known.
class SlotTableBuilder {
public:
    SlotTableBuilder(const DirectionTable& dirs, int k) : dirs_(dirs), k_(k) {}

    VertexId vertex(const Coord& c) {
        auto [it, inserted] = ids_.try_emplace(c, static_cast<VertexId>(coords_.size()));
        if (inserted) {
            if (coords_.size() >= std::numeric_limits<VertexId>::max() / 16) {
                throw std::length_error("lattice too large for 32-bit slot indices");
            }
            coords_.push_back(c);
            neighbour_.resize(neighbour_.size() + dirs_.size(), kNoSlot);
            wrap_.resize(wrap_.size() + dirs_.size(), 0);
        }
        return it->second;
    }

    std::size_t vertex_count() const { return coords_.size(); }
    const Coord& coord(VertexId v) const { return coords_[v]; }
    VertexId find(const Coord& c) const { return ids_.at(c); }

    /// Link u --label--> v (and the reverse slot at v).
    void link(VertexId u, VertexId v, int label, bool wrap) {
        set(u, label, v, wrap);
        set(v, dirs_.opposite[label], u, wrap);
    }

    FractalLattice finish(FractalLattice lat) {
        const int nd = dirs_.size();
        const std::size_t n = coords_.size();
        lat.n_vertices = n;
        lat.k = k_;
        lat.directions = dirs_;
        lat.coords = std::move(coords_);
        lat.slot_dir.assign(n * k_, 0);
        lat.partner.assign(n * k_, kNoSlot);
        lat.is_wrap.assign(n * k_, 0);

        std::vector<std::int8_t> slot_of_label(n * nd, -1);
        for (std::size_t v = 0; v < n; ++v) {
            int j = 0;
            for (int label = 0; label < nd; ++label) {
                if (neighbour_[v * nd + label] == kNoSlot) continue;
                if (j == k_) {
                    throw std::logic_error("vertex " + std::to_string(v) + " has degree > " +
                                           std::to_string(k_));
                }
                slot_of_label[v * nd + label] = static_cast<std::int8_t>(j);
                lat.slot_dir[v * k_ + j] = static_cast<std::uint8_t>(label);
                lat.is_wrap[v * k_ + j] = wrap_[v * nd + label];
                ++j;
            }
            if (j != k_) {
                throw std::logic_error("vertex " + std::to_string(v) + " has degree " +
                                       std::to_string(j) + ", expected " + std::to_string(k_));
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            for (int j = 0; j < k_; ++j) {
                const int label = lat.slot_dir[v * k_ + j];
                const FlatIndex w = neighbour_[v * nd + label];
                const int back = slot_of_label[static_cast<std::size_t>(w) * nd + dirs_.opposite[label]];
                lat.partner[v * k_ + j] = static_cast<FlatIndex>(static_cast<std::size_t>(w) * k_ + back);
            }
        }
        return lat;
    }

private:
    void set(VertexId u, int label, VertexId v, bool wrap) {
        const std::size_t idx = static_cast<std::size_t>(u) * dirs_.size() + label;
        if (neighbour_[idx] != kNoSlot) {
            throw std::logic_error("duplicate direction label " + std::to_string(label) +
                                   " at vertex " + std::to_string(u));
        }
        neighbour_[idx] = v;
        wrap_[idx] = wrap ? 1 : 0;
    }

    const DirectionTable& dirs_;
    int k_;
    std::unordered_map<Coord, VertexId, CoordHash> ids_;
    std::vector<Coord> coords_;
    std::vector<FlatIndex> neighbour_;  // (vertex, label) -> neighbour vertex
    std::vector<std::uint8_t> wrap_;
};

inline Coord midpoint(const Coord& a, const Coord& b) {
    return {(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2};
}

inline Coord difference(const Coord& a, const Coord& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <std::size_t NC>
void subdivide(SlotTableBuilder& b, const DirectionTable& dirs, const std::array<Coord, NC>& c,
               int level) {
    if (level == 0) {
        std::array<VertexId, NC> id{};
        for (std::size_t i = 0; i < NC; ++i) id[i] = b.vertex(c[i]);
        for (std::size_t i = 0; i < NC; ++i) {
            for (std::size_t j = i + 1; j < NC; ++j) {
                const int label = dirs.label_of(difference(c[j], c[i]));
                if (label < 0) throw std::logic_error("unit edge with no direction label");
                b.link(id[i], id[j], label, false);
            }
        }
        return;
    }
    for (std::size_t i = 0; i < NC; ++i) {
        std::array<Coord, NC> sub;
        for (std::size_t j = 0; j < NC; ++j) sub[j] = (i == j) ? c[i] : midpoint(c[i], c[j]);
        subdivide(b, dirs, sub, level - 1);
    }
}

}  // namespace detail

/// Builds the stage-S Sierpinski gasket with corner wraparound links.
/// Vertex ids follow first encounter in corner-order recursion.
inline FractalLattice build_gasket(const StageConfig& cfg) {
    check_stage_config(cfg);
    const std::int64_t s = std::int64_t{1} << cfg.stage;
    const int d = cfg.embedding_dim;
    const DirectionTable dirs = d == 2 ? DirectionTable::gasket2d() : DirectionTable::gasket3d();

    FractalLattice lat;
    lat.kind = LatticeKind::Gasket;
    lat.dim = d;
    lat.stage = cfg.stage;
    lat.extent = s;

    detail::SlotTableBuilder b(dirs, 2 * d);
    std::vector<Coord> corner_coords;
    if (d == 2) {
        const std::array<Coord, 3> c = {Coord{0, 0, 0}, Coord{2 * s, 0, 0}, Coord{s, s, 0}};
        corner_coords.assign(c.begin(), c.end());
        detail::subdivide(b, dirs, c, cfg.stage);
    } else {
        const std::array<Coord, 4> c = {Coord{0, 0, 0}, Coord{s, s, 0}, Coord{s, 0, s},
                                        Coord{0, s, s}};
        corner_coords.assign(c.begin(), c.end());
        detail::subdivide(b, dirs, c, cfg.stage);
    }

    for (const auto& c : corner_coords) lat.corners.push_back(b.find(c));
    for (std::size_t p = 0; p < lat.corners.size(); ++p) {
        for (std::size_t q = p + 1; q < lat.corners.size(); ++q) {
            const VertexId vp = lat.corners[p];
            const VertexId vq = lat.corners[q];
            const int toward = dirs.label_along(detail::difference(b.coord(vq), b.coord(vp)));
            if (toward < 0) throw std::logic_error("corner pair has no direction label");
            // At P the wrap link points away from Q; at Q it points away from P.
            b.link(vp, vq, dirs.opposite[toward], true);
        }
    }
    return b.finish(std::move(lat));
}

/// Periodic d-dimensional torus of side L (d in 1..3, L >= 2 even).
inline FractalLattice build_hypercubic(int d, int L) {
    if (d < 1 || d > 3) throw std::invalid_argument("hypercubic dimension must be 1..3");
    if (L < 2 || L % 2 != 0) throw std::invalid_argument("hypercubic size must be even and >= 2");
    const DirectionTable dirs = DirectionTable::hypercubic(d);

    FractalLattice lat;
    lat.kind = LatticeKind::Hypercubic;
    lat.dim = d;
    lat.stage = 0;
    lat.extent = L;

    std::size_t n = 1;
    for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(L);

    auto id_of = [&](const Coord& c) {
        std::size_t id = 0;
        for (int i = d - 1; i >= 0; --i) id = id * L + static_cast<std::size_t>(c[i]);
        return static_cast<VertexId>(id);
    };

    detail::SlotTableBuilder b(dirs, 2 * d);
    for (std::size_t id = 0; id < n; ++id) {
        Coord c{0, 0, 0};
        std::size_t rest = id;
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<std::int64_t>(rest % L);
            rest /= L;
        }
        b.vertex(c);
    }
    for (std::size_t id = 0; id < n; ++id) {
        const Coord c = b.coord(static_cast<VertexId>(id));
        for (int i = 0; i < d; ++i) {
            Coord nb = c;
            nb[i] = (c[i] + 1) % L;
            b.link(static_cast<VertexId>(id), id_of(nb), i, c[i] + 1 == L);
        }
    }
    lat.corners = {0};
    return b.finish(std::move(lat));
}

// ── Queries ──────────────────────────────────────────────────────────────────

/// Vertex nearest the centroid of the corners; ties go to the smaller id.
inline VertexId center_vertex(const FractalLattice& lat) {
    const auto m = static_cast<std::int64_t>(lat.corners.size());
    Coord sum{0, 0, 0};
    for (VertexId c : lat.corners) {
        for (int i = 0; i < 3; ++i) sum[i] += lat.coords[c][i];
    }
    // Compare m^2 * |x - centroid|^2 in exact integer arithmetic.
    VertexId best = 0;
    std::int64_t best_d2 = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        std::int64_t d2 = 0;
        for (int i = 0; i < 3; ++i) {
            const std::int64_t delta = m * lat.coords[v][i] - sum[i];
            d2 += delta * delta;
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best = static_cast<VertexId>(v);
        }
    }
    return best;
}

using DirectionSet = std::vector<int>;

struct VertexCensus {
    std::map<DirectionSet, std::size_t> internal;
    std::map<DirectionSet, std::size_t> corner;

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& [_, n] : internal) t += n;
        for (const auto& [_, n] : corner) t += n;
        return t;
    }
};

inline VertexCensus classify_vertices(const FractalLattice& lat) {
    VertexCensus census;
    DirectionSet set(lat.k);
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        for (int j = 0; j < lat.k; ++j) set[j] = lat.slot_dir[v * lat.k + j];
        auto& bucket = lat.is_corner(static_cast<VertexId>(v)) ? census.corner : census.internal;
        ++bucket[set];
    }
    return census;
}

// ── Validation ───────────────────────────────────────────────────────────────

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;  // first offending element when failed
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    }
    const ValidationCheck* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
};

inline std::ostream& operator<<(std::ostream& os, const ValidationReport& r) {
    for (const auto& c : r.checks) {
        os << (c.passed ? "[ok]   " : "[FAIL] ") << c.name;
        if (!c.passed) os << ": " << c.detail;
        os << '\n';
    }
    return os;
}

inline ValidationReport validate(const FractalLattice& lat) {
    ValidationReport report;
    const std::size_t ns = lat.n_slots();
    auto slot_name = [&](std::size_t f) {
        return "(" + std::to_string(f / lat.k) + "," + std::to_string(f % lat.k) + ")";
    };

    ValidationCheck shape{"table-shape", true, ""};
    if (lat.k <= 0 || lat.coords.size() != lat.n_vertices || lat.slot_dir.size() != ns ||
        lat.partner.size() != ns || lat.is_wrap.size() != ns) {
        shape.passed = false;
        shape.detail = "table sizes disagree with n_vertices * k";
        report.checks.push_back(shape);
        return report;
    }
    report.checks.push_back(shape);

    ValidationCheck involution{"involution", true, ""};
    ValidationCheck fixed{"no-fixed-points", true, ""};
    for (std::size_t f = 0; f < ns; ++f) {
        const FlatIndex p = lat.partner[f];
        if (p >= ns || lat.partner[p] != f) {
            if (involution.passed) {
                involution.passed = false;
                involution.detail = "slot " + slot_name(f) + " partner does not map back";
            }
        } else if (p == f && fixed.passed) {
            fixed.passed = false;
            fixed.detail = "slot " + slot_name(f) + " is its own partner";
        }
    }
    report.checks.push_back(involution);
    report.checks.push_back(fixed);

    ValidationCheck degree{"degree-regular", true, ""};
    if (lat.k != 2 * lat.dim) {
        degree.passed = false;
        degree.detail = "k = " + std::to_string(lat.k) + ", expected " + std::to_string(2 * lat.dim);
    }
    for (std::size_t v = 0; v < lat.n_vertices && degree.passed; ++v) {
        for (int j = 0; j + 1 < lat.k; ++j) {
            const int a = lat.slot_dir[v * lat.k + j];
            const int b = lat.slot_dir[v * lat.k + j + 1];
            if (a >= b) {
                degree.passed = false;
                degree.detail = "vertex " + std::to_string(v) +
                                " has repeated or unsorted direction labels";
                break;
            }
        }
    }
    report.checks.push_back(degree);

    ValidationCheck geometry{"direction-consistency", true, ""};
    for (std::size_t f = 0; f < ns && geometry.passed; ++f) {
        const FlatIndex p = lat.partner[f];
        if (p >= ns) continue;
        const int label = lat.slot_dir[f];
        if (label >= lat.directions.size() || lat.slot_dir[p] != lat.directions.opposite[label]) {
            geometry.passed = false;
            geometry.detail = "slot " + slot_name(f) + " partner label is not opposite";
            break;
        }
        if (!lat.is_wrap[f]) {
            const Coord delta = detail::difference(lat.coords[p / lat.k], lat.coords[f / lat.k]);
            if (delta != lat.directions.displacement[label]) {
                geometry.passed = false;
                geometry.detail = "slot " + slot_name(f) + " displacement disagrees with its label";
            }
        }
    }
    report.checks.push_back(geometry);

    ValidationCheck count{"vertex-count", true, ""};
    std::uint64_t expected = 0;
    if (lat.kind == LatticeKind::Gasket) {
        expected = vertex_count_closed_form({lat.dim, lat.stage});
    } else {
        expected = 1;
        for (int i = 0; i < lat.dim; ++i) expected *= static_cast<std::uint64_t>(lat.extent);
    }
    if (expected != lat.n_vertices) {
        count.passed = false;
        count.detail = "N = " + std::to_string(lat.n_vertices) + ", expected " +
                       std::to_string(expected);
    }
    report.checks.push_back(count);

    if (lat.kind == LatticeKind::Gasket) {
        ValidationCheck corners{"corners", true, ""};
        std::size_t wraps = 0;
        for (auto w : lat.is_wrap) wraps += w;
        const std::size_t expected_wrap_links =
            static_cast<std::size_t>(lat.dim + 1) * lat.dim / 2;
        if (lat.corners.size() != static_cast<std::size_t>(lat.dim + 1)) {
            corners.passed = false;
            corners.detail = std::to_string(lat.corners.size()) + " corners";
        } else if (wraps != 2 * expected_wrap_links) {
            corners.passed = false;
            corners.detail = std::to_string(wraps / 2) + " wrap links, expected " +
                             std::to_string(expected_wrap_links);
        }
        report.checks.push_back(corners);
    }
    return report;
}

// ── Interchange ──────────────────────────────────────────────────────────────

/// Header `d_E S N k`, then one line per slot:
/// `vertex_id x y [z] slot dir_label partner_vertex partner_slot wrap_flag`.
/// Hypercubic lattices write S = 0.
inline void write_lattice_dump(std::ostream& os, const FractalLattice& lat) {
    os << lat.dim << ' ' << lat.stage << ' ' << lat.n_vertices << ' ' << lat.k << '\n';
    const int ncoord = std::max(2, lat.dim);
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        for (int j = 0; j < lat.k; ++j) {
            const std::size_t f = v * lat.k + j;
            os << v;
            for (int c = 0; c < ncoord; ++c) os << ' ' << lat.coords[v][c];
            os << ' ' << j << ' ' << int{lat.slot_dir[f]} << ' ' << lat.partner[f] / lat.k << ' '
               << lat.partner[f] % lat.k << ' ' << int{lat.is_wrap[f]} << '\n';
        }
    }
}

}  // namespace fracwalk
