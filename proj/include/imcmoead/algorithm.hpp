#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imcmoead/core.hpp"
#include "imcmoead/weights.hpp"

namespace imcmoead {

/// How an offspring is compared with an incumbent during replacement.
enum class ReplacementRule {
    /// Feasibility first, then CV, then Tchebycheff (the four-case rule).
    FourScenario,
    /// Replace only when the offspring is no worse in both Tchebycheff and CV.
    Conjunctive,
};

std::string to_string(ReplacementRule rule);
ReplacementRule replacement_rule_from_string(const std::string& name);

struct AlgoConfig {
    std::size_t N = 100;
    std::size_t K = 10;
    /// Variables per inverse-model group; 0 selects 3, or 2 when d == 2.
    std::size_t L = 0;
    /// Neighborhood size; 0 selects max(2, round(0.1 N)).
    std::size_t T = 0;
    std::size_t max_fe = 10000;
    double eq_tol = kDefaultEqualityTolerance;
    /// Mutation probability per coordinate; negative selects 1/d.
    double pm = -1.0;
    double eta = 20.0;
    std::size_t kmeans_iters = 50;
    ReplacementRule rule = ReplacementRule::FourScenario;
    std::uint64_t seed = 0;

    std::size_t group_size(std::size_t d) const { return L != 0 ? L : (d == 2 ? 2 : 3); }
    double mutation_probability(std::size_t d) const { return pm >= 0.0 ? pm : 1.0 / static_cast<double>(d); }
};

struct GenerationStats {
    std::size_t gen = 0;
    std::size_t feasible = 0;
    double best_cv = 0.0;
    double mean_cv = 0.0;
    std::optional<double> hv;
    std::size_t fe_used = 0;
    std::size_t replacements = 0;
};

struct RunResult {
    Population population;
    std::vector<GenerationStats> stats;
    WeightLattice lattice;
    ReferencePoint z;
    std::size_t fe_used = 0;
};

/// Called after initialization (gen 0) and after every generation.
using GenerationObserver = std::function<void(const GenerationStats&, const Population&)>;

/// Whether the offspring should take the incumbent's slot for weight lambda.
bool offspring_survives(const Solution& offspring, const Solution& incumbent, std::span<const double> lambda,
                        std::span<const double> z, ReplacementRule rule = ReplacementRule::FourScenario);

/// Survivor of the four-case feasibility/CV/Tchebycheff comparison; ties keep
/// the incumbent.
const Solution& replace_with_constraints(const Solution& offspring, const Solution& incumbent,
                                         std::span<const double> lambda, std::span<const double> z);

/// Assigns the offspring to its best weight (over all weights) and offers it
/// to every slot in that weight's neighborhood. Returns the number of slots
/// replaced.
std::size_t global_replacement_pass(const Solution& offspring, Population& population, const WeightLattice& lattice,
                                    const ReferencePoint& z, ReplacementRule rule = ReplacementRule::FourScenario);

GenerationStats population_stats(const Population& population, std::size_t gen, std::size_t fe_used);

/// Runs the inverse-model decomposition algorithm until the evaluation budget
/// is spent. Throws ConfigError when max_fe < N or N < m.
RunResult run(const Problem& problem, const AlgoConfig& config, const GenerationObserver& observer = {});

/// Uniform random sampling baseline spending the same budget. The returned
/// population holds the feasible nondominated samples (or the least-violating
/// sample when none is feasible).
RunResult run_random_search(const Problem& problem, const AlgoConfig& config);

}  // namespace imcmoead
