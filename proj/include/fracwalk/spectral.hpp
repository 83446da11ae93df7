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
 * Dense reference model of the walk operator for small lattices.
 *
 * The matrix is assembled as the product of an explicit coin matrix and an
 * explicit shift permutation, independently of the gather kernels in
 * walk.hpp, so that the two can be checked against each other.
 *
 * On a periodic hypercubic lattice each momentum (k_1..k_d) contributes
 * d-1 eigenvalues +1, d-1 eigenvalues -1 and the pair exp(+-i w) with
 * cos w = (1/d) sum_i cos k_i.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracwalk/lattice.hpp"

namespace fracwalk {

inline constexpr std::size_t kDefaultSpectralCap = 4096;

using Eigenvalue = std::complex<double>;

struct SpectrumReport {
    std::string lattice;
    std::vector<Eigenvalue> computed;
    std::vector<Eigenvalue> theory;  // empty for gaskets
    double max_modulus_deviation = 0.0;
    double tolerance = 0.0;
    double worst_mismatch = 0.0;
    Eigenvalue worst_computed{};
    Eigenvalue worst_theory{};
    bool conjugate_closed = false;
    bool matched = false;
};

/// W = G S as a dense real matrix; column v*k+j is W applied to that basis state.
inline Eigen::MatrixXd build_walk_matrix(const FractalLattice& lat,
                                         std::size_t cap = kDefaultSpectralCap) {
    const std::size_t n = lat.n_slots();
    if (n > cap) {
        throw std::length_error("walk matrix of size " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(cap));
    }
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t f = 0; f < n; ++f) {
        // Amplitude on slot f moves to its partner slot.
        shift(static_cast<Eigen::Index>(lat.partner[f]), static_cast<Eigen::Index>(f)) = 1.0;
    }
    Eigen::MatrixXd coin = Eigen::MatrixXd::Zero(m, m);
    const double w = 2.0 / lat.k;
    for (std::size_t v = 0; v < lat.n_vertices; ++v) {
        const auto base = static_cast<Eigen::Index>(v * lat.k);
        coin.block(base, base, lat.k, lat.k).setConstant(w);
        coin.block(base, base, lat.k, lat.k).diagonal().array() -= 1.0;
    }
    return coin * shift;
}

inline double unitarity_defect(const Eigen::MatrixXd& w) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(w.rows(), w.cols());
    return (w.transpose() * w - id).cwiseAbs().maxCoeff();
}

inline std::vector<Eigenvalue> eigenvalues(const Eigen::MatrixXd& w) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(w, false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

namespace detail {

// Phase in (-pi, pi]; values within 1e-6 of -pi are folded onto +pi so
// that numerically negative-zero imaginary parts of -1 sort together.
inline double canonical_phase(Eigenvalue z) {
    double p = std::arg(z);
    if (p <= -std::numbers::pi + 1e-6) p += 2.0 * std::numbers::pi;
    return p;
}

inline void sort_spectrum(std::vector<Eigenvalue>& v) {
    std::sort(v.begin(), v.end(), [](Eigenvalue a, Eigenvalue b) {
        const double pa = canonical_phase(a);
        const double pb = canonical_phase(b);
        if (pa != pb) return pa < pb;
        return std::abs(a) < std::abs(b);
    });
}

inline void fill_modulus_and_conjugation(SpectrumReport& r, double tol) {
    r.max_modulus_deviation = 0.0;
    for (const auto& z : r.computed) {
        r.max_modulus_deviation = std::max(r.max_modulus_deviation, std::abs(std::abs(z) - 1.0));
    }
    std::vector<Eigenvalue> conj;
    conj.reserve(r.computed.size());
    for (const auto& z : r.computed) conj.push_back(std::conj(z));
    sort_spectrum(conj);
    r.conjugate_closed = true;
    for (std::size_t i = 0; i < conj.size(); ++i) {
        if (std::abs(conj[i] - r.computed[i]) > tol) r.conjugate_closed = false;
    }
}

}  // namespace detail

/// Closed-form eigenvalue multiset of the flip-flop walk on the d-torus of side L.
inline std::vector<Eigenvalue> hypercubic_theory_spectrum(int d, int L) {
    std::vector<Eigenvalue> out;
    std::size_t n_momenta = 1;
    for (int i = 0; i < d; ++i) n_momenta *= static_cast<std::size_t>(L);
    out.reserve(n_momenta * 2 * d);
    for (std::size_t m = 0; m < n_momenta; ++m) {
        std::size_t rest = m;
        double cos_sum = 0.0;
        for (int i = 0; i < d; ++i) {
            const auto l = static_cast<double>(rest % L);
            rest /= L;
            cos_sum += std::cos(2.0 * std::numbers::pi * l / L);
        }
        for (int i = 0; i < d - 1; ++i) {
            out.emplace_back(1.0, 0.0);
            out.emplace_back(-1.0, 0.0);
        }
        const double c = std::clamp(cos_sum / d, -1.0, 1.0);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        out.emplace_back(c, s);
        out.emplace_back(c, -s);
    }
    return out;
}

/// Compares two multisets after sorting both by (phase, modulus).
inline bool match_spectra(std::vector<Eigenvalue> a, std::vector<Eigenvalue> b, double tol,
                          double* worst = nullptr, Eigenvalue* worst_a = nullptr,
                          Eigenvalue* worst_b = nullptr) {
    if (a.size() != b.size()) return false;
    detail::sort_spectrum(a);
    detail::sort_spectrum(b);
    double w = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double e = std::abs(a[i] - b[i]);
        if (e > w || i == 0) {
            w = e;
            if (worst_a) *worst_a = a[i];
            if (worst_b) *worst_b = b[i];
        }
    }
    if (worst) *worst = w;
    return w <= tol;
}

inline SpectrumReport hypercubic_spectrum_check(int d, int L, double tol = 1e-8,
                                                std::size_t cap = kDefaultSpectralCap) {
    const FractalLattice lat = build_hypercubic(d, L);
    SpectrumReport r;
    r.lattice = "hypercubic d=" + std::to_string(d) + " L=" + std::to_string(L);
    r.tolerance = tol;
    r.computed = eigenvalues(build_walk_matrix(lat, cap));
    detail::sort_spectrum(r.computed);
    r.theory = hypercubic_theory_spectrum(d, L);
    detail::sort_spectrum(r.theory);
    detail::fill_modulus_and_conjugation(r, tol);
    r.matched = match_spectra(r.computed, r.theory, tol, &r.worst_mismatch, &r.worst_computed,
                              &r.worst_theory);
    return r;
}

/// Eigenvalues of the walk on a (small) gasket; only unit modulus and
/// conjugation symmetry can be checked.
inline SpectrumReport gasket_spectrum(const FractalLattice& lat, double tol = 1e-9,
                                      std::size_t cap = kDefaultSpectralCap) {
    SpectrumReport r;
    r.lattice = "gasket d_E=" + std::to_string(lat.dim) + " S=" + std::to_string(lat.stage);
    r.tolerance = tol;
    r.computed = eigenvalues(build_walk_matrix(lat, cap));
    detail::sort_spectrum(r.computed);
    detail::fill_modulus_and_conjugation(r, tol);
    r.matched = r.max_modulus_deviation <= tol;
    return r;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<Eigenvalue>& ev) {
    const auto old = os.precision(17);
    os << "re,im\n";
    for (const auto& z : ev) os << z.real() << ',' << z.imag() << '\n';
    os.precision(old);
}

}  // namespace fracwalk
