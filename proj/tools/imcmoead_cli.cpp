// Experiment runner: run / summarize / plot.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "imcmoead/harness.hpp"

namespace fs = std::filesystem;
using namespace imcmoead;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitPartial = 2;

std::size_t failed_runs(const std::vector<RunRecord>& records) {
    std::size_t n = 0;
    for (const auto& r : records) {
        if (r.error) {
            std::cerr << fmt::format("run failed: {} / {} seed {}: {}\n", r.problem, r.config_id, r.seed, *r.error);
            ++n;
        }
    }
    return n;
}

int cmd_run(const fs::path& config_path, const fs::path& out, std::size_t jobs, std::optional<std::uint64_t> seed) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    cfg.jobs = jobs;
    cfg.out_dir = out;
    if (seed) cfg.seed = *seed;

    const auto records = run_experiment(cfg);
    write_experiment_outputs(out, records, default_registry(), cfg.reference_resolution);
    std::cout << summary_text(summarize(records));
    return failed_runs(records) == 0 ? kExitOk : kExitPartial;
}

int cmd_summarize(const fs::path& in) {
    const auto records = read_runs_jsonl(in / "runs.jsonl");
    const auto table = summarize(records);
    std::ofstream out(in / "summary.csv", std::ios::binary);
    out << summary_csv(table);
    std::cout << summary_text(table);
    return failed_runs(records) == 0 ? kExitOk : kExitPartial;
}

int cmd_plot(const fs::path& in) {
    const auto records = read_runs_jsonl(in / "runs.jsonl");
    for (const auto& path : write_front_plots(in, records, default_registry())) std::cout << path.string() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse-model decomposition MOEA for constrained problems: experiment runner"};
    app.require_subcommand(1);

    fs::path config_path;
    fs::path out_dir;
    std::size_t jobs = 1;
    std::uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    auto* seed_opt = run->add_option("--seed", seed, "Override the base seed");

    fs::path in_dir;
    auto* summarize_cmd = app.add_subcommand("summarize", "Rebuild summary.csv from runs.jsonl");
    summarize_cmd->add_option("--in", in_dir, "Experiment directory")->required()->check(CLI::ExistingDirectory);
    auto* plot = app.add_subcommand("plot", "Re-emit front plots from runs.jsonl");
    plot->add_option("--in", in_dir, "Experiment directory")->required()->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitFailure;
    }

    try {
        if (*run) {
            std::optional<std::uint64_t> seed_override;
            if (*seed_opt) seed_override = seed;
            return cmd_run(config_path, out_dir, jobs, seed_override);
        }
        if (*summarize_cmd) return cmd_summarize(in_dir);
        if (*plot) return cmd_plot(in_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
