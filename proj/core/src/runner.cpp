#include "fluxlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "fluxlab/bohm.hpp"
#include "fluxlab/conescan.hpp"
#include "fluxlab/flux.hpp"

namespace fluxlab {

namespace {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

// Run fn(i) for i in [0, n) on up to `workers` threads; results land in a
// caller-indexed container, so ordering never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::min<std::size_t>(workers, n);
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
}

RunTable run_fas_scan(const ExperimentConfig& cfg, int workers) {
    RunTable t;
    t.kind = cfg.kind;
    t.label = cfg.label;
    t.columns = {"R", "T", "signed", "absolute", "tail_bound", "quad_error", "momentum_prob",
                 "abs_gap"};
    if (cfg.with_fas_distance) t.columns.push_back("fas_distance");

    const WavePacket packet = cfg.packet();
    const Cone cone = *cfg.cone;
    const ConeProbabilityResult mom =
        momentum_cone_probability(packet, cone, cfg.cap_order, cfg.radial_tol);

    t.rows.resize(cfg.radii.size());
    parallel_for(cfg.radii.size(), workers, [&](std::size_t i) {
        const double R = cfg.radii[i];
        const FluxIntegralResult fl = integrated_flux(packet, make_cap(R, cone), cfg.t_start,
                                                      cfg.epsilon_tail, cfg.cap_order,
                                                      cfg.time_tol);
        std::vector<double>& row = t.rows[i];
        row = {R,
               cfg.t_start,
               fl.signed_flux,
               fl.absolute_flux,
               fl.tail_bound,
               fl.quad_error,
               mom.value,
               std::abs(fl.signed_flux - mom.value)};
        if (cfg.with_fas_distance)
            row.push_back(fas_distance(packet, R, cfg.fas_t_start, std::min(cfg.epsilon_tail, 1e-8),
                                       cfg.cap_order, cfg.time_tol));
    });
    return t;
}

RunTable run_sict(const ExperimentConfig& cfg, int workers) {
    RunTable t;
    t.kind = cfg.kind;
    t.label = cfg.label;
    t.columns = {"t", "position_prob", "momentum_prob", "gap"};
    const WavePacket packet = cfg.packet();
    const Cone cone = *cfg.cone;
    const ConeProbabilityResult mom =
        momentum_cone_probability(packet, cone, cfg.cap_order, cfg.radial_tol);
    t.rows.resize(cfg.times.size());
    parallel_for(cfg.times.size(), workers, [&](std::size_t i) {
        const ConeProbabilityResult pos =
            position_cone_probability(packet, cone, cfg.times[i], cfg.r_min, cfg.cap_order);
        t.rows[i] = {cfg.times[i], pos.value, mom.value, std::abs(pos.value - mom.value)};
    });
    return t;
}

RunTable run_bohm(const ExperimentConfig& cfg, int workers) {
    RunTable t;
    t.kind = cfg.kind;
    t.label = cfg.label;
    t.columns = {"R",          "n",         "estimate",   "ci95",
                 "multi_cross_frac", "abort_frac", "no_cross_frac",
                 "mean_signed_crossings", "mean_total_crossings", "t_budget", "seed"};
    const WavePacket packet = cfg.packet();
    const Cone cone = *cfg.cone;
    OdeOptions opts;
    opts.rel_tol = cfg.ode_rel_tol;
    t.rows.resize(cfg.radii.size());
    // Parallelism lives inside crossing_statistics (over trajectories);
    // radii are processed sequentially to keep peak thread count bounded.
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
        const double R = cfg.radii[i];
        const EnsembleStats st = crossing_statistics(packet, R, cone, cfg.ensemble_n, cfg.seed,
                                                     cfg.t_budget, workers, opts);
        t.rows[i] = {R,
                     double(st.n),
                     st.estimate,
                     st.ci95,
                     double(st.multi_crossers) / double(st.n),
                     double(st.aborted) / double(st.n),
                     double(st.no_cross) / double(st.n),
                     st.mean_signed_cap_crossings,
                     st.mean_total_cap_crossings,
                     st.t_budget,
                     double(st.seed)};
    }
    return t;
}

RunTable run_remainder(const ExperimentConfig& cfg) {
    RunTable t;
    t.kind = cfg.kind;
    t.label = cfg.label;
    t.columns = {"l1_psi", "l1_ypsi", "c_f", "c_g", "sup_f_sampled", "sup_g_sampled",
                 "margin_f", "margin_g", "samples"};
    const RemainderBounds rb = remainder_bounds(cfg.packet());
    t.rows.push_back({rb.l1_psi, rb.l1_ypsi, rb.c_f, rb.c_g, rb.sup_f_sampled, rb.sup_g_sampled,
                      rb.c_f - rb.sup_f_sampled, rb.c_g - rb.sup_g_sampled, double(rb.samples)});
    return t;
}

RunTable run_window(const ExperimentConfig& cfg, int workers) {
    RunTable t;
    t.kind = cfg.kind;
    t.label = cfg.label;
    t.columns = {"R", "t1", "t2", "absolute_flux"};
    const WavePacket packet = cfg.packet();
    t.rows.resize(cfg.radii.size());
    parallel_for(cfg.radii.size(), workers, [&](std::size_t i) {
        const double R = cfg.radii[i];
        const double value = finite_window_flux(packet, R, cfg.window[0], cfg.window[1],
                                                cfg.cap_order, cfg.time_tol);
        t.rows[i] = {R, cfg.window[0], cfg.window[1], value};
    });
    return t;
}

}  // namespace

RunTable run_experiment(const ExperimentConfig& cfg, int workers) {
    if (cfg.kind == "fas-scan") return run_fas_scan(cfg, workers);
    if (cfg.kind == "sict") return run_sict(cfg, workers);
    if (cfg.kind == "bohm") return run_bohm(cfg, workers);
    if (cfg.kind == "remainder") return run_remainder(cfg);
    if (cfg.kind == "window") return run_window(cfg, workers);
    throw std::invalid_argument("run_experiment: unknown kind " + cfg.kind);
}

std::string to_csv(const RunTable& table) {
    std::string out = "# fluxlab " + table.kind + " v1\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json_summary(const RunTable& table) {
    nlohmann::json j;
    j["kind"] = table.kind;
    j["label"] = table.label;
    j["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const double x : row) r.push_back(x);
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> write_outputs(const RunTable& table,
                                                 const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string stem = table.label.empty() ? table.kind : table.kind + "-" + table.label;
    const std::filesystem::path csv = out_dir / (stem + ".csv");
    const std::filesystem::path json = out_dir / (stem + ".json");
    {
        std::ofstream f(csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + csv.string());
        f << to_csv(table);
    }
    {
        std::ofstream f(json, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + json.string());
        f << to_json_summary(table);
    }
    return {csv, json};
}

}  // namespace fluxlab
