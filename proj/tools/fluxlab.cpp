// Command-line front end: runs experiments described by JSON configs and
// prints convergence reports for the CSVs they produce.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxlab/report.hpp"
#include "fluxlab/runner.hpp"

namespace {

// Machine-readable error envelope on stderr, nonzero exit.
int fail_json(const std::string& stage, const std::vector<std::string>& errors, int code) {
    nlohmann::json j;
    j["error"] = stage;
    j["details"] = errors;
    std::cerr << j.dump(2) << std::endl;
    return code;
}

struct RunArgs {
    std::string config_path;
    std::string out_dir = "out";
    int workers = 1;
    std::int64_t seed_override = -1;
};

int run_kind(const std::string& kind, const RunArgs& args) {
    fluxlab::ParseOutcome parsed = fluxlab::parse_config_file(args.config_path);
    if (!parsed.config) return fail_json("config", parsed.errors, 2);
    fluxlab::ExperimentConfig cfg = *parsed.config;
    if (cfg.kind != kind)
        return fail_json("config",
                         {"config kind '" + cfg.kind + "' does not match subcommand '" + kind + "'"},
                         2);
    if (args.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed_override);
    try {
        const fluxlab::RunTable table = fluxlab::run_experiment(cfg, args.workers);
        const auto files = fluxlab::write_outputs(table, args.out_dir);
        for (const auto& f : files) std::cout << f.string() << '\n';
        return 0;
    } catch (const std::exception& e) {
        return fail_json("run", {e.what()}, 3);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-evolution flux laboratory"};
    app.require_subcommand(1);

    RunArgs args;
    const std::vector<std::string> kinds = {"fas-scan", "sict", "bohm", "remainder", "window"};
    std::vector<CLI::App*> subs;
    for (const auto& kind : kinds) {
        CLI::App* sub = app.add_subcommand(kind, "run a '" + kind + "' experiment config");
        sub->add_option("--config", args.config_path, "JSON experiment config")->required();
        sub->add_option("--out", args.out_dir, "output directory (default: out)");
        sub->add_option("--workers", args.workers, "worker threads for independent work items")
            ->check(CLI::Range(1, 256));
        sub->add_option("--seed", args.seed_override, "override the config's ensemble seed");
        subs.push_back(sub);
    }

    std::vector<std::string> report_files;
    CLI::App* rep = app.add_subcommand("report", "print value tables and log-log slopes");
    rep->add_option("csv", report_files, "result CSV files")->required()->expected(-1);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (subs[i]->parsed()) return run_kind(kinds[i], args);

    if (rep->parsed()) {
        try {
            std::vector<std::filesystem::path> paths(report_files.begin(), report_files.end());
            std::cout << fluxlab::report_text(paths);
            return 0;
        } catch (const std::exception& e) {
            return fail_json("report", {e.what()}, 4);
        }
    }
    return 1;
}
