#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "imcmoead/algorithm.hpp"
#include "imcmoead/metrics.hpp"
#include "imcmoead/problems.hpp"

namespace imcmoead {

/// One algorithm configuration taking part in an experiment.
struct AlgorithmEntry {
    std::string id;
    std::string type = "im-c-moead";  ///< or "random-search"
    AlgoConfig config;
};

struct ExperimentConfig {
    std::vector<std::string> problems;
    std::vector<AlgorithmEntry> algorithms;
    std::size_t repetitions = 30;
    std::uint64_t seed = 1;
    std::size_t hv_samples = 1'000'000;
    /// Oracle resolution passed to reference_front (0 = its default).
    std::size_t reference_resolution = 0;
    std::size_t jobs = 1;
    std::filesystem::path out_dir;

    /// Throws ConfigError on invalid values or unknown problems/types.
    void validate(const ProblemRegistry& registry) const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct RunRecord {
    std::string problem;
    std::string config_id;
    std::uint64_t seed = 0;
    std::size_t repetition = 0;
    /// Feasible nondominated objective vectors of the final population.
    std::vector<Vector> front;
    HVResult hv;
    /// Ideal and nadir used to normalize `front` before computing hv.
    Vector norm_ideal;
    Vector norm_nadir;
    double wall_time_s = 0.0;
    std::size_t fe_used = 0;
    std::vector<GenerationStats> generations;
    std::optional<std::string> error;
};

nlohmann::json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

void write_runs_jsonl(const std::filesystem::path& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_runs_jsonl(const std::filesystem::path& path);

/// Feasible members of the population reduced to their nondominated objectives.
std::vector<Vector> feasible_front(const Population& population);

/// Executes one (problem, algorithm, seed) run. Exceptions propagate.
RunRecord execute_run(const ProblemSpec& spec, const AlgorithmEntry& algorithm, std::uint64_t seed,
                      std::size_t repetition);

/// Normalization bounds per problem: ideal and nadir of the nondominated union
/// of the reference front and every observed front.
struct Normalization {
    Vector ideal;
    Vector nadir;

    /// (f - ideal) / (nadir - ideal); zero-width ranges use width 1.
    Vector apply(const Vector& f) const;
};

Normalization normalization_for(const std::vector<Vector>& reference, const std::vector<RunRecord>& records,
                                const std::string& problem);

/// Normalized HV with reference point (1.1, ..., 1.1).
HVResult normalized_hypervolume(const std::vector<Vector>& front, const Normalization& norm, std::size_t mc_samples,
                                std::uint64_t seed);

/// Fills hv / norm_ideal / norm_nadir of every successful record.
void assign_hypervolumes(std::vector<RunRecord>& records, const ProblemRegistry& registry, std::size_t mc_samples,
                         std::size_t reference_resolution = 0);

/// Runs repetitions x problems x algorithms (seed = base seed + repetition)
/// on `jobs` workers, then computes normalized hypervolumes. A failing run is
/// recorded with `error` set and does not stop the experiment.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config,
                                      const ProblemRegistry& registry = default_registry());

struct SummaryCell {
    std::string config_id;
    std::size_t runs = 0;
    double mean = 0.0;
    double std = 0.0;
    /// Against the baseline; empty for the baseline itself or when fewer than
    /// three runs are available on either side.
    std::optional<RankSumResult> comparison;
};

struct SummaryRow {
    std::string problem;
    std::vector<SummaryCell> cells;
};

struct VerdictTotals {
    std::size_t wins = 0;
    std::size_t ties = 0;
    std::size_t losses = 0;
};

struct SummaryTable {
    std::string baseline;
    std::vector<std::string> configs;
    std::vector<SummaryRow> rows;
    std::map<std::string, VerdictTotals> totals;
};

/// Mean and sample standard deviation of HV per (problem, config), plus
/// Wilcoxon verdicts of every config against the first config seen (or the
/// given baseline). Failed runs are skipped. Throws on empty input.
SummaryTable summarize(const std::vector<RunRecord>& records, std::optional<std::string> baseline = std::nullopt,
                       double alpha = 0.05);

/// "5.0000e-1 (0.00e+0)" style.
std::string format_mean_std(double mean, double std);
/// Scientific notation with `digits` decimals and an unpadded exponent.
std::string format_sci(double value, int digits);

std::string summary_csv(const SummaryTable& table);
std::string summary_text(const SummaryTable& table);

/// SVG scatter of the record's front over the reference front. m == 2 gives
/// a single panel, larger m a grid of pairwise objective panels.
std::string emit_front_plot(const RunRecord& record, const std::vector<Vector>& reference);

/// Best-HV successful record per (problem, config), in first-seen order.
std::vector<const RunRecord*> best_runs(const std::vector<RunRecord>& records);

std::string plot_filename(const RunRecord& record);

/// Writes one SVG per (problem, config) best run into `dir`; returns paths.
std::vector<std::filesystem::path> write_front_plots(const std::filesystem::path& dir,
                                                     const std::vector<RunRecord>& records,
                                                     const ProblemRegistry& registry,
                                                     std::size_t reference_resolution = 0);

/// Writes runs.jsonl, summary.csv and the SVG plots.
void write_experiment_outputs(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                              const ProblemRegistry& registry, std::size_t reference_resolution = 0);

}  // namespace imcmoead
