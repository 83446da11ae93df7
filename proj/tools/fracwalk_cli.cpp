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

// fracwalk: quantum-walk spatial search on Sierpinski gaskets.
//
//   fracwalk lattice-info --dim 2 --stage 6 [--dump lattice.txt]
//   fracwalk search       --dim 2 --stage 6 [--ancilla] [--series s.csv] [--snapshot p.csv]
//   fracwalk sweep        --dim 2 --stages 4-10 --fit-min 6 --ancilla --summary sum.csv --fit-report fit.json
//   fracwalk validate     [--dim 2 --stage 4]
//   fracwalk spectrum     --hypercubic 2,4 | --dim 2 --stage 2 [--out ev.csv]
//
// Exit codes: 0 success, 1 I/O or runtime error, 2 usage, 3 validation
// failure, 4 no probability peak within the horizon.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracwalk/fracwalk.hpp"

namespace fw = fracwalk;

namespace {

enum ExitCode { kOk = 0, kRuntime = 1, kUsage = 2, kValidation = 3, kNoPeak = 4 };

constexpr const char* kSearchSummaryVersion = "# fracwalk search-summary v1";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    int dim = 2;
    int stage = 4;
    std::string stages;
    int t1 = 2;
    std::string marked = "center";
    bool ancilla = false;
    std::optional<std::size_t> horizon;
    std::optional<std::size_t> tulsi_horizon;
    std::optional<double> cos_delta;
    int fit_min = 0;
    int workers = 1;
    bool full_horizon = false;
    bool stop_at_peak = false;
    std::string dump_path;
    std::string series_path;
    std::string ancilla_series_path;
    std::string summary_path;
    std::string snapshot_path;
    std::string fit_report_path;
    std::string out_path;
    std::vector<int> hypercubic;
    bool corrupt_partner = false;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

void apply_marked(const std::string& text, fw::ExperimentConfig& cfg) {
    if (text == "center") {
        cfg.marked_policy = fw::MarkedPolicy::Center;
    } else if (text == "corner") {
        cfg.marked_policy = fw::MarkedPolicy::Corner;
    } else {
        std::size_t used = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != text.size()) throw UsageError("--marked must be center, corner or a vertex id");
        cfg.marked_policy = fw::MarkedPolicy::Explicit;
        cfg.marked_id = static_cast<fw::VertexId>(id);
    }
}

void parse_stage_range(const std::string& text, int& lo, int& hi) {
    const auto dash = text.find('-');
    try {
        if (dash == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dash));
            hi = std::stoi(text.substr(dash + 1));
        }
    } catch (const std::exception&) {
        throw UsageError("--stages must look like 4-10");
    }
    if (lo < 1 || hi < lo) throw UsageError("--stages must be an ascending range of stages >= 1");
}

fw::ExperimentConfig experiment_config(const Options& o) {
    fw::ExperimentConfig cfg;
    cfg.embedding_dim = o.dim;
    cfg.stage_min = cfg.stage_max = o.stage;
    cfg.t1 = o.t1;
    cfg.ancilla = o.ancilla;
    cfg.plain_horizon = o.horizon;
    cfg.tulsi_horizon = o.tulsi_horizon;
    cfg.fit_min_stage = o.fit_min;
    cfg.workers = o.workers;
    cfg.full_horizon = o.full_horizon;
    apply_marked(o.marked, cfg);
    if (o.dim != 2 && o.dim != 3) throw UsageError("--dim must be 2 or 3");
    if (o.t1 < 1) throw UsageError("--t1 must be >= 1");
    return cfg;
}

void check_stage(const Options& o) {
    if (o.stage < 1) throw UsageError("--stage must be >= 1");
    if (o.dim != 2 && o.dim != 3) throw UsageError("--dim must be 2 or 3");
}

// ── lattice-info ─────────────────────────────────────────────────────────────

int cmd_lattice_info(const Options& o) {
    check_stage(o);
    const fw::FractalLattice lat = fw::build_gasket({o.dim, o.stage});
    std::cout << std::setprecision(10);
    std::cout << "d_E = " << lat.dim << "\nS   = " << lat.stage << "\nN   = " << lat.n_vertices
              << "\nk   = " << lat.k << "\nL   = " << lat.extent
              << "\nd   = " << fw::hausdorff_dimension(lat.dim)
              << "\nd_s = " << fw::spectral_dimension(lat.dim)
              << "\ncenter vertex = " << fw::center_vertex(lat) << '\n';
    const auto census = fw::classify_vertices(lat);
    auto print = [](const char* what, const auto& bucket) {
        for (const auto& [set, n] : bucket) {
            std::cout << what << " {";
            for (std::size_t i = 0; i < set.size(); ++i) std::cout << (i ? "," : "") << set[i];
            std::cout << "} x " << n << '\n';
        }
    };
    print("internal", census.internal);
    print("corner  ", census.corner);
    if (!o.dump_path.empty()) {
        auto f = open_out(o.dump_path);
        fw::write_lattice_dump(f, lat);
    }
    return kOk;
}

// ── search ───────────────────────────────────────────────────────────────────

void write_search_summary(std::ostream& os, const fw::FractalLattice& lat, const fw::SearchRun& run) {
    os << std::setprecision(17) << lat.dim << ',' << lat.stage << ',' << lat.n_vertices << ','
       << run.params.t1 << ',' << (run.ancilla ? run.params.cos_delta : 0.0) << ',' << run.Q << ','
       << run.P << ',' << run.complexity() << '\n';
}

int cmd_search(const Options& o) {
    check_stage(o);
    fw::ExperimentConfig cfg = experiment_config(o);
    cfg.full_horizon = !o.stop_at_peak;
    const fw::FractalLattice lat = fw::build_gasket({o.dim, o.stage});

    fw::StageResult r;
    if (o.cos_delta) {
        if (!(*o.cos_delta > 0.0 && *o.cos_delta <= 1.0)) throw UsageError("--cos-delta must lie in (0, 1]");
        // Explicit angle: skip calibration but still report the plain run.
        cfg.ancilla = false;
        r = fw::run_stage(cfg, lat);
        fw::SearchParams q = r.plain.params;
        q.cos_delta = *o.cos_delta;
        q.horizon = o.tulsi_horizon.value_or(fw::default_tulsi_horizon(lat.n_vertices, q.cos_delta));
        r.cos_delta = q.cos_delta;
        r.tulsi = fw::run_tulsi(lat, q);
    } else {
        r = fw::run_stage(cfg, lat);
    }

    std::ostringstream summary;
    summary << kSearchSummaryVersion << '\n' << "d_E,S,N,t1,cos_delta,Q,P,Q_over_sqrtP\n";
    write_search_summary(summary, lat, r.plain);
    if (r.tulsi) write_search_summary(summary, lat, *r.tulsi);
    std::cout << summary.str();
    if (!o.summary_path.empty()) open_out(o.summary_path) << summary.str();

    if (!o.series_path.empty()) {
        auto f = open_out(o.series_path);
        fw::write_series_csv(f, r.plain);
    }
    if (!o.ancilla_series_path.empty() && r.tulsi) {
        auto f = open_out(o.ancilla_series_path);
        fw::write_series_csv(f, *r.tulsi);
    }

    const fw::SearchRun& reported = r.tulsi ? *r.tulsi : r.plain;
    if (!o.snapshot_path.empty()) {
        const fw::WalkState st = fw::evolve(lat, reported.params, reported.ancilla, reported.Q);
        const auto prob = fw::vertex_probabilities(st);
        auto f = open_out(o.snapshot_path);
        f << std::setprecision(17) << (lat.dim == 3 ? "x,y,z,probability\n" : "x,y,probability\n");
        for (std::size_t v = 0; v < lat.n_vertices; ++v) {
            for (int c = 0; c < lat.dim; ++c) f << lat.coords[v][c] << ',';
            f << prob[v] << '\n';
        }
    }

    bool ok = r.plain.peak_found && (!r.tulsi || r.tulsi->peak_found);
    if (!ok) {
        std::cerr << "no probability peak within the horizon; increase --horizon"
                  << (r.tulsi ? " or --tulsi-horizon" : "") << '\n';
        return kNoPeak;
    }
    return kOk;
}

// ── sweep ────────────────────────────────────────────────────────────────────

int cmd_sweep(const Options& o) {
    fw::ExperimentConfig cfg = experiment_config(o);
    if (o.stages.empty()) throw UsageError("--stages is required");
    parse_stage_range(o.stages, cfg.stage_min, cfg.stage_max);
    const int fit_lo = std::max(cfg.stage_min, cfg.fit_min_stage);
    if (cfg.stage_max - fit_lo + 1 < 3) {
        throw UsageError("fitting needs at least 3 stages in the fit range");
    }
    const fw::SweepResult res = fw::run_sweep(cfg);

    std::ostringstream summary;
    fw::write_summary_csv(summary, res.stages);
    if (o.summary_path.empty()) {
        std::cout << summary.str();
    } else {
        open_out(o.summary_path) << summary.str();
    }
    const std::string report = fw::fit_report(res).dump(2) + "\n";
    if (o.fit_report_path.empty()) {
        std::cout << report;
    } else {
        open_out(o.fit_report_path) << report;
    }
    for (const auto& s : res.stages) {
        if (s.failed) std::cerr << "stage " << s.stage << " failed: " << s.error << '\n';
    }
    return kOk;
}

// ── validate ─────────────────────────────────────────────────────────────────

struct Gate {
    bool all = true;
    void check(bool ok, const std::string& what, const std::string& detail = {}) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << what;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << '\n';
        all = all && ok;
    }
};

std::string sci(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x;
    return os.str();
}

int cmd_validate(const Options& o) {
    check_stage(o);
    Gate gate;
    fw::FractalLattice lat = fw::build_gasket({o.dim, o.stage});
    if (o.corrupt_partner) {
        // Fault injection: point slot (0,0) at a slot that does not point back.
        lat.partner[0] = lat.partner[1];
    }
    const fw::ValidationReport report = fw::validate(lat);
    for (const auto& c : report.checks) gate.check(c.passed, "lattice " + c.name, c.detail);
    if (!report.ok()) return kValidation;

    // Walk invariants on a deterministic pseudo-random state.
    fw::WalkState s = fw::zero_state(lat);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
        s.amplitudes[i] = {std::sin(1.0 + 0.37 * i), std::cos(2.0 + 0.11 * i * i)};
    }
    const double n0 = std::sqrt(s.norm_squared());
    for (auto& a : s.amplitudes) a /= n0;
    const fw::WalkState s0 = s;
    fw::FlipFlopWalk walk(lat);
    auto max_diff = [](const fw::WalkState& a, const fw::WalkState& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
            m = std::max(m, std::abs(a.amplitudes[i] - b.amplitudes[i]));
        }
        return m;
    };
    fw::WalkState t = s0;
    walk.shift(t);
    walk.shift(t);
    gate.check(max_diff(t, s0) <= 1e-14, "shift is an involution", sci(max_diff(t, s0)));
    t = s0;
    walk.coin(t);
    walk.coin(t);
    gate.check(max_diff(t, s0) <= 1e-14, "coin is an involution", sci(max_diff(t, s0)));
    const fw::VertexId marked = fw::center_vertex(lat);
    t = s0;
    walk.oracle(t, marked);
    walk.oracle(t, marked);
    gate.check(max_diff(t, s0) <= 1e-14, "oracle is an involution", sci(max_diff(t, s0)));
    fw::WalkState co = s0, oc = s0;
    walk.oracle(co, marked);
    walk.coin(co);
    walk.coin(oc);
    walk.oracle(oc, marked);
    gate.check(max_diff(co, oc) <= 1e-14, "oracle commutes with coin", sci(max_diff(co, oc)));
    const fw::WalkState u0 = fw::uniform_state(lat);
    fw::WalkState u = u0;
    walk.walk(u);
    gate.check(max_diff(u, u0) <= 1e-12, "uniform state is walk-invariant", sci(max_diff(u, u0)));
    t = s0;
    walk.walk(t, 0, 1000);
    const double drift = std::abs(std::sqrt(t.norm_squared()) - 1.0);
    gate.check(drift <= 1e-10, "norm conserved over 1000 walk steps", sci(drift));

    // Controlled search with cos(delta) = 1 must reproduce plain search.
    fw::SearchParams p;
    p.marked = marked;
    p.horizon = 200;
    const auto plain = fw::run_plain(lat, p);
    p.cos_delta = 1.0;
    const auto ctrl = fw::run_tulsi(lat, p);
    double dev = 0.0;
    for (std::size_t i = 0; i < plain.probability_series.size(); ++i) {
        dev = std::max(dev, std::abs(plain.probability_series[i] - ctrl.probability_series[i]));
    }
    gate.check(dev <= 1e-12, "ancilla search at delta = 0 equals plain search", sci(dev));

    // Dense reference model.
    const fw::FractalLattice small = lat.n_slots() <= 1024 ? lat : fw::build_gasket({o.dim, 2});
    const Eigen::MatrixXd w = fw::build_walk_matrix(small);
    double kernel_dev = 0.0;
    for (std::size_t col = 0; col < small.n_slots(); ++col) {
        fw::WalkState b = fw::zero_state(small);
        b.amplitudes[col] = 1.0;
        fw::apply_walk(small, b);
        for (std::size_t row = 0; row < small.n_slots(); ++row) {
            kernel_dev = std::max(kernel_dev, std::abs(b.amplitudes[row] - w(static_cast<Eigen::Index>(row),
                                                                             static_cast<Eigen::Index>(col))));
        }
    }
    gate.check(kernel_dev <= 1e-12, "walk kernel equals dense walk matrix", sci(kernel_dev));
    const auto spec = fw::hypercubic_spectrum_check(2, 4);
    gate.check(spec.matched, "hypercubic d=2 L=4 spectrum matches closed form", sci(spec.worst_mismatch));

    return gate.all ? kOk : kValidation;
}

// ── spectrum ─────────────────────────────────────────────────────────────────

int cmd_spectrum(const Options& o) {
    fw::SpectrumReport r;
    if (!o.hypercubic.empty()) {
        if (o.hypercubic.size() != 2) throw UsageError("--hypercubic takes d,L");
        const int d = o.hypercubic[0], L = o.hypercubic[1];
        if (d < 1 || d > 3 || L < 2 || L % 2) throw UsageError("--hypercubic needs d in 1..3 and even L >= 2");
        r = fw::hypercubic_spectrum_check(d, L);
    } else {
        check_stage(o);
        r = fw::gasket_spectrum(fw::build_gasket({o.dim, o.stage}));
    }
    std::cout << r.lattice << ": " << r.computed.size() << " eigenvalues\n"
              << "max | |lambda| - 1 | = " << sci(r.max_modulus_deviation) << '\n'
              << "closed under conjugation: " << (r.conjugate_closed ? "yes" : "no") << '\n';
    if (!r.theory.empty()) {
        std::cout << "worst deviation from closed form = " << sci(r.worst_mismatch) << " at "
                  << r.worst_computed << " vs " << r.worst_theory << '\n';
    }
    std::cout << (r.matched ? "match" : "MISMATCH") << '\n';
    if (!o.out_path.empty()) {
        auto f = open_out(o.out_path);
        fw::write_spectrum_csv(f, r.computed);
    }
    return r.matched ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-walk spatial search on Sierpinski gaskets"};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.require_subcommand(1);
    Options o;

    auto add_lattice = [&](CLI::App* sub) {
        sub->add_option("--dim", o.dim, "Embedding dimension (2 or 3)")->capture_default_str();
        sub->add_option("--stage", o.stage, "Gasket stage S >= 1")->capture_default_str();
    };
    auto add_search = [&](CLI::App* sub) {
        sub->add_option("--t1", o.t1, "Walk steps per oracle call")->capture_default_str();
        sub->add_option("--marked", o.marked, "center, corner or a vertex id")->capture_default_str();
        sub->add_flag("--ancilla", o.ancilla, "Also run the ancilla-controlled search");
        sub->add_option("--horizon", o.horizon, "Oracle blocks for plain search");
        sub->add_option("--tulsi-horizon", o.tulsi_horizon, "Oracle blocks for controlled search");
    };

    auto* info = app.add_subcommand("lattice-info", "Build a gasket and print its properties");
    add_lattice(info);
    info->add_option("--dump", o.dump_path, "Write the slot table to this file");

    auto* search = app.add_subcommand("search", "Run one stage of spatial search");
    add_lattice(search);
    add_search(search);
    search->add_option("--cos-delta", o.cos_delta, "Use this cos(delta) instead of calibrating");
    search->add_flag("--stop-at-peak", o.stop_at_peak, "Stop each run after its first period");
    search->add_option("--series", o.series_path, "Plain-search probability series CSV");
    search->add_option("--ancilla-series", o.ancilla_series_path, "Controlled-search series CSV");
    search->add_option("--summary", o.summary_path, "Summary CSV");
    search->add_option("--snapshot", o.snapshot_path, "Per-vertex probability at the peak");

    auto* sweep = app.add_subcommand("sweep", "Run a range of stages and fit scaling laws");
    sweep->add_option("--dim", o.dim, "Embedding dimension (2 or 3)")->capture_default_str();
    sweep->add_option("--stages", o.stages, "Stage range, e.g. 4-10")->required();
    add_search(sweep);
    sweep->add_option("--fit-min", o.fit_min, "Smallest stage used in fits")->capture_default_str();
    sweep->add_option("--workers", o.workers, "Stages run concurrently")->capture_default_str();
    sweep->add_flag("--full-horizon", o.full_horizon, "Run every search to its full horizon");
    sweep->add_option("--summary", o.summary_path, "Per-stage summary CSV (default stdout)");
    sweep->add_option("--fit-report", o.fit_report_path, "Fit report JSON (default stdout)");

    auto* validate = app.add_subcommand("validate", "Check lattice, walk and spectral invariants");
    add_lattice(validate);
    validate->add_flag("--corrupt-partner", o.corrupt_partner, "Inject a partner-table fault");

    auto* spectrum = app.add_subcommand("spectrum", "Diagonalise the walk operator of a small lattice");
    add_lattice(spectrum);
    spectrum->add_option("--hypercubic", o.hypercubic, "Periodic lattice d,L instead of a gasket")
        ->delimiter(',');
    spectrum->add_option("--out", o.out_path, "Eigenvalue CSV (re,im)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*info) return cmd_lattice_info(o);
        if (*search) return cmd_search(o);
        if (*sweep) return cmd_sweep(o);
        if (*validate) return cmd_validate(o);
        if (*spectrum) return cmd_spectrum(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kUsage;
}
