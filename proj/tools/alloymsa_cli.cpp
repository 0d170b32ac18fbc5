#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "alloymsa/error.hpp"
#include "alloymsa/experiment.hpp"
#include "alloymsa/parallel.hpp"

using namespace alloymsa;

namespace {

const std::map<std::string, ExperimentKind> kSubcommands{
    {"analyze-potential", ExperimentKind::genfun},
    {"wegner", ExperimentKind::wegner},
    {"resonance", ExperimentKind::resonance},
    {"msa-schedule", ExperimentKind::msa_schedule},
    {"msa-probe", ExperimentKind::msa_singularity},
    {"lifshitz", ExperimentKind::lifshitz},
    {"large-disorder", ExperimentKind::large_disorder},
    {"decay", ExperimentKind::localization_decay},
};

// machine-readable diagnostics on stderr and next to the outputs
int report_error(ErrorKind kind, const std::string& msg, const std::string& out_dir) {
    const int code = exit_code(kind);
    const Json diag{{"error", to_string(kind)}, {"message", msg}, {"exit_code", code}};
    std::cerr << diag.dump() << "\n";
    if (!out_dir.empty()) {
        try {
            write_text(std::filesystem::path(out_dir) / "error.json", diag.dump(2) + "\n");
        } catch (...) {
        }
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"alloy-type random operator experiments"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    int threads = 0;
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--seed", seed, "master seed, overrides the config");
    app.add_option("--trials", trials, "Monte Carlo trials, overrides the config");
    app.add_option("--out", out_dir, "output directory, overrides the config");
    app.add_option("--threads", threads, "worker threads (default: hardware)")->check(CLI::NonNegativeNumber);
    for (const auto& [name, kind] : kSubcommands) app.add_subcommand(name, std::string("run a ") + to_string(kind) + " experiment");

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        ExperimentConfig cfg = load_config(config_path);
        if (cfg.kind != kSubcommands.at(sub))
            fail(ErrorKind::schema, "config kind " + std::string(to_string(cfg.kind)) +
                                        " does not match subcommand " + sub);
        if (seed) cfg.seed = *seed;
        if (trials) {
            if (*trials == 0) fail(ErrorKind::schema, "trials must be positive");
            cfg.trials = *trials;
        }
        if (!out_dir.empty()) cfg.output = out_dir;
        out_dir = cfg.output;
        if (threads > 0) set_thread_count(threads);

        const ReportBundle report = run_experiment(cfg, Execution::parallel);
        write_report(report, cfg.output);
        std::cout << to_string(cfg.kind) << " " << config_hash(cfg) << " "
                  << (report.pass ? "pass" : "contract violation") << "\n";
        for (const auto& [name, ok] : report.contracts)
            if (!ok) std::cerr << "contract failed: " << name << "\n";
        return report.pass ? 0 : exit_code(ErrorKind::contract);
    } catch (const Error& e) {
        return report_error(e.kind(), e.what(), out_dir);
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "internal"}, {"message", e.what()}, {"exit_code", 1}}.dump() << "\n";
        return 1;
    }
}
