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
 * Flip-flop walk kernels.
 *
 * State layout: layer-major, then vertex, then slot, so that amplitude
 * (layer, v, j) lives at layer * N * k + v * k + j. The coin acts on
 * contiguous k-blocks; the shift is a gather through the partner table into
 * a scratch buffer, and consecutive walk steps ping-pong between the two.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracwalk/lattice.hpp"

namespace fracwalk {

using Amplitude = std::complex<double>;

struct WalkState {
    std::vector<Amplitude> amplitudes;
    std::size_t n_vertices = 0;
    int k = 0;
    int layers = 1;  // 2 when an ancilla qubit is present; layer 1 is ancilla |1>

    std::size_t layer_size() const { return n_vertices * static_cast<std::size_t>(k); }

    std::span<Amplitude> layer(int l) {
        return {amplitudes.data() + static_cast<std::size_t>(l) * layer_size(), layer_size()};
    }
    std::span<const Amplitude> layer(int l) const {
        return {amplitudes.data() + static_cast<std::size_t>(l) * layer_size(), layer_size()};
    }

    Amplitude& at(int l, VertexId v, int j) {
        return amplitudes[static_cast<std::size_t>(l) * layer_size() + static_cast<std::size_t>(v) * k + j];
    }
    const Amplitude& at(int l, VertexId v, int j) const {
        return amplitudes[static_cast<std::size_t>(l) * layer_size() + static_cast<std::size_t>(v) * k + j];
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }
};

inline WalkState zero_state(const FractalLattice& lat, int layers = 1) {
    if (layers != 1 && layers != 2) throw std::invalid_argument("layers must be 1 or 2");
    WalkState s;
    s.n_vertices = lat.n_vertices;
    s.k = lat.k;
    s.layers = layers;
    s.amplitudes.assign(static_cast<std::size_t>(layers) * lat.n_slots(), Amplitude{});
    return s;
}

/// Uniform superposition |s>; with two layers all weight sits on layer 1.
inline WalkState uniform_state(const FractalLattice& lat, int layers = 1) {
    WalkState s = zero_state(lat, layers);
    const double a = 1.0 / std::sqrt(static_cast<double>(lat.n_slots()));
    auto top = s.layer(layers - 1);
    std::fill(top.begin(), top.end(), Amplitude{a, 0.0});
    return s;
}

namespace detail {

template <int K>
inline void coin_block(Amplitude* a) {
    Amplitude sum{};
    for (int j = 0; j < K; ++j) sum += a[j];
    const Amplitude mean2 = sum * (2.0 / K);
    for (int j = 0; j < K; ++j) a[j] = mean2 - a[j];
}

inline void coin_block_dyn(Amplitude* a, int k) {
    Amplitude sum{};
    for (int j = 0; j < k; ++j) sum += a[j];
    const Amplitude mean2 = sum * (2.0 / k);
    for (int j = 0; j < k; ++j) a[j] = mean2 - a[j];
}

template <int K>
inline void coin_layer(std::span<Amplitude> layer) {
    for (std::size_t b = 0; b < layer.size(); b += K) coin_block<K>(layer.data() + b);
}

inline void coin_layer(std::span<Amplitude> layer, int k) {
    switch (k) {
        case 2: coin_layer<2>(layer); break;
        case 4: coin_layer<4>(layer); break;
        case 6: coin_layer<6>(layer); break;
        default:
            for (std::size_t b = 0; b < layer.size(); b += k) coin_block_dyn(layer.data() + b, k);
    }
}

// Shift followed by coin, one vertex block at a time.
template <int K>
inline void walk_layer(std::span<const Amplitude> in, std::span<Amplitude> out,
                       const FlatIndex* partner) {
    const std::size_t n = in.size();
    for (std::size_t b = 0; b < n; b += K) {
        Amplitude* o = out.data() + b;
        for (int j = 0; j < K; ++j) o[j] = in[partner[b + j]];
        coin_block<K>(o);
    }
}

inline void walk_layer(std::span<const Amplitude> in, std::span<Amplitude> out,
                       const FlatIndex* partner, int k) {
    switch (k) {
        case 2: walk_layer<2>(in, out, partner); break;
        case 4: walk_layer<4>(in, out, partner); break;
        case 6: walk_layer<6>(in, out, partner); break;
        default:
            for (std::size_t b = 0; b < in.size(); b += k) {
                for (int j = 0; j < k; ++j) out[b + j] = in[partner[b + j]];
                coin_block_dyn(out.data() + b, k);
            }
    }
}

}  // namespace detail

/// Operators of the flip-flop walk bound to one lattice. Holds the scratch
/// buffer used by the shift, so one instance must not be shared by two
/// threads; the lattice itself is only read.
class FlipFlopWalk {
public:
    explicit FlipFlopWalk(const FractalLattice& lat) : lat_(&lat) {}

    const FractalLattice& lattice() const { return *lat_; }

    void shift(WalkState& s, int layer) {
        check(s);
        auto cur = s.layer(layer);
        scratch_.resize(cur.size());
        const FlatIndex* partner = lat_->partner.data();
        for (std::size_t i = 0; i < cur.size(); ++i) scratch_[i] = cur[partner[i]];
        std::copy(scratch_.begin(), scratch_.end(), cur.begin());
    }

    void coin(WalkState& s, int layer) {
        check(s);
        detail::coin_layer(s.layer(layer), s.k);
    }

    /// W = G S applied `steps` times to one layer.
    void walk(WalkState& s, int layer, int steps = 1) {
        check(s);
        if (steps <= 0) return;
        auto cur = s.layer(layer);
        scratch_.resize(cur.size());
        const FlatIndex* partner = lat_->partner.data();
        std::span<Amplitude> tmp(scratch_);
        // Ping-pong between the layer and the scratch buffer.
        for (int t = 0; t < steps; ++t) {
            if (t % 2 == 0) {
                detail::walk_layer(cur, tmp, partner, s.k);
            } else {
                detail::walk_layer(tmp, cur, partner, s.k);
            }
        }
        if (steps % 2 == 1) std::copy(tmp.begin(), tmp.end(), cur.begin());
    }

    void oracle(WalkState& s, VertexId marked, int layer) {
        check(s);
        check_vertex(marked);
        Amplitude* a = s.layer(layer).data() + static_cast<std::size_t>(marked) * s.k;
        for (int j = 0; j < s.k; ++j) a[j] = -a[j];
    }

    void shift(WalkState& s) { for (int l = 0; l < s.layers; ++l) shift(s, l); }
    void coin(WalkState& s) { for (int l = 0; l < s.layers; ++l) coin(s, l); }
    void walk(WalkState& s) { for (int l = 0; l < s.layers; ++l) walk(s, l, 1); }
    void oracle(WalkState& s, VertexId marked) {
        for (int l = 0; l < s.layers; ++l) oracle(s, marked, l);
    }

    void check_vertex(VertexId v) const {
        if (v >= lat_->n_vertices) {
            throw std::out_of_range("vertex id " + std::to_string(v) + " out of range (N = " +
                                    std::to_string(lat_->n_vertices) + ")");
        }
    }

private:
    void check(const WalkState& s) const {
        if (s.n_vertices != lat_->n_vertices || s.k != lat_->k ||
            s.amplitudes.size() != static_cast<std::size_t>(s.layers) * lat_->n_slots()) {
            throw std::invalid_argument("walk state does not match the lattice");
        }
    }

    const FractalLattice* lat_;
    std::vector<Amplitude> scratch_;
};

inline void apply_shift(const FractalLattice& lat, WalkState& s) { FlipFlopWalk(lat).shift(s); }
inline void apply_coin(const FractalLattice& lat, WalkState& s) { FlipFlopWalk(lat).coin(s); }
inline void apply_walk(const FractalLattice& lat, WalkState& s) { FlipFlopWalk(lat).walk(s); }
inline void apply_oracle(const FractalLattice& lat, WalkState& s, VertexId marked) {
    FlipFlopWalk(lat).oracle(s, marked);
}

/// Probability of finding the walker at `v`, summed over slots and layers.
inline double marked_probability(const WalkState& s, VertexId v) {
    if (v >= s.n_vertices) throw std::out_of_range("vertex id out of range");
    double p = 0.0;
    for (int l = 0; l < s.layers; ++l) {
        double pl = 0.0;
        const Amplitude* a = s.layer(l).data() + static_cast<std::size_t>(v) * s.k;
        for (int j = 0; j < s.k; ++j) pl += std::norm(a[j]);
        p += pl;
    }
    return p;
}

inline std::vector<double> vertex_probabilities(const WalkState& s) {
    std::vector<double> p(s.n_vertices, 0.0);
    for (std::size_t v = 0; v < s.n_vertices; ++v) p[v] = marked_probability(s, static_cast<VertexId>(v));
    return p;
}

/// Text snapshot: header `N k layers`, then `layer vertex slot re im` rows.
inline void write_state_snapshot(std::ostream& os, const WalkState& s) {
    const auto old = os.precision(17);
    os << s.n_vertices << ' ' << s.k << ' ' << s.layers << '\n';
    for (int l = 0; l < s.layers; ++l) {
        for (std::size_t v = 0; v < s.n_vertices; ++v) {
            for (int j = 0; j < s.k; ++j) {
                const auto& a = s.at(l, static_cast<VertexId>(v), j);
                os << l << ' ' << v << ' ' << j << ' ' << a.real() << ' ' << a.imag() << '\n';
            }
        }
    }
    os.precision(old);
}

}  // namespace fracwalk
