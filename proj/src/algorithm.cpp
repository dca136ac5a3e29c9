#include "imcmoead/algorithm.hpp"

#include <algorithm>
#include <limits>

#include <fmt/core.h>

#include "imcmoead/cluster.hpp"
#include "imcmoead/invmodel.hpp"
#include "imcmoead/rng.hpp"
#include "imcmoead/scalarize.hpp"

namespace imcmoead {

std::string to_string(ReplacementRule rule) {
    switch (rule) {
        case ReplacementRule::FourScenario: return "four-scenario";
        case ReplacementRule::Conjunctive: return "conjunctive";
    }
    return "unknown";
}

ReplacementRule replacement_rule_from_string(const std::string& name) {
    if (name == "four-scenario") return ReplacementRule::FourScenario;
    if (name == "conjunctive") return ReplacementRule::Conjunctive;
    throw ConfigError(fmt::format("unknown replacement rule '{}'", name));
}

bool offspring_survives(const Solution& offspring, const Solution& incumbent, std::span<const double> lambda,
                        std::span<const double> z, ReplacementRule rule) {
    if (rule == ReplacementRule::Conjunctive) {
        return tchebycheff(offspring.f, lambda, z) <= tchebycheff(incumbent.f, lambda, z) &&
               offspring.cv <= incumbent.cv;
    }
    if (!offspring.feasible && incumbent.feasible) return false;
    if (offspring.feasible && !incumbent.feasible) return true;
    if (!offspring.feasible) return offspring.cv < incumbent.cv;
    return tchebycheff(offspring.f, lambda, z) < tchebycheff(incumbent.f, lambda, z);
}

const Solution& replace_with_constraints(const Solution& offspring, const Solution& incumbent,
                                         std::span<const double> lambda, std::span<const double> z) {
    return offspring_survives(offspring, incumbent, lambda, z) ? offspring : incumbent;
}

std::size_t global_replacement_pass(const Solution& offspring, Population& population, const WeightLattice& lattice,
                                    const ReferencePoint& z, ReplacementRule rule) {
    const std::size_t best = best_weight_index(offspring.f, lattice.weights, z.z);
    std::size_t replaced = 0;
    for (std::size_t j : lattice.neighborhoods[best]) {
        if (offspring_survives(offspring, population[j], lattice.weights[j], z.z, rule)) {
            population[j] = offspring;
            ++replaced;
        }
    }
    return replaced;
}

GenerationStats population_stats(const Population& population, std::size_t gen, std::size_t fe_used) {
    GenerationStats s;
    s.gen = gen;
    s.fe_used = fe_used;
    if (population.empty()) return s;
    s.best_cv = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const auto& sol : population) {
        if (sol.feasible) ++s.feasible;
        s.best_cv = std::min(s.best_cv, sol.cv);
        total += sol.cv;
    }
    s.mean_cv = total / static_cast<double>(population.size());
    return s;
}

namespace {

void check_config(const Problem& problem, const AlgoConfig& config) {
    problem.validate();
    if (config.N < problem.m)
        throw ConfigError(fmt::format("population size {} smaller than objective count {}", config.N, problem.m));
    if (config.max_fe < config.N)
        throw ConfigError(fmt::format("evaluation budget {} smaller than population size {}", config.max_fe, config.N));
    if (config.K < 1) throw ConfigError("cluster count K must be >= 1");
    if (!(config.eta > 0.0)) throw ConfigError("distribution index eta must be > 0");
    if (config.eq_tol < 0.0) throw ConfigError("equality tolerance must be >= 0");
}

Vector random_point(const Problem& problem, Rng& rng) {
    Vector x(problem.d);
    for (std::size_t i = 0; i < problem.d; ++i) x[i] = rng.uniform(problem.lower[i], problem.upper[i]);
    return x;
}

// Offspring decision vectors of one cluster: inverse-model sampling when the
// cluster can support a model, plain copies otherwise; then mutation.
std::vector<Vector> cluster_offspring(const Problem& problem, const AlgoConfig& config,
                                      std::span<const Solution> subpop, Rng& rng) {
    std::vector<Vector> xs;
    if (subpop.size() >= 2) {
        const auto training = tournament_select(subpop, subpop.size(), rng);
        const auto plan = random_grouping(problem.m, problem.d, config.group_size(problem.d), rng);
        xs = reproduce_subpop(training, plan, problem, subpop.size(), rng);
    } else {
        for (const auto& s : subpop) xs.push_back(s.x);
    }
    const double pm = config.mutation_probability(problem.d);
    for (auto& x : xs) x = polynomial_mutation(std::move(x), problem.lower, problem.upper, pm, config.eta, rng);
    return xs;
}

}  // namespace

RunResult run(const Problem& problem, const AlgoConfig& config, const GenerationObserver& observer) {
    check_config(problem, config);

    Rng rng(config.seed);
    Evaluator evaluate(problem, config.eq_tol);
    RunResult result;
    result.lattice = make_lattice(problem.m, config.N, config.T);

    Population& population = result.population;
    population.reserve(config.N);
    for (std::size_t i = 0; i < config.N; ++i) population.push_back(evaluate(random_point(problem, rng)));

    std::vector<Vector> objectives;
    for (const auto& s : population) objectives.push_back(s.f);
    result.z = ideal_point(objectives);

    result.stats.push_back(population_stats(population, 0, evaluate.evaluations()));
    if (observer) observer(result.stats.back(), population);

    for (std::size_t gen = 1; evaluate.evaluations() < config.max_fe; ++gen) {
        const Partition partition = kmeans_objective_space(population, config.K, config.kmeans_iters, rng);

        std::vector<Vector> candidates;
        candidates.reserve(config.N);
        for (const auto& members : partition.members()) {
            if (members.empty()) continue;
            Rng cluster_rng = rng.fork();
            std::vector<Solution> subpop;
            subpop.reserve(members.size());
            for (std::size_t idx : members) subpop.push_back(population[idx]);
            for (auto& x : cluster_offspring(problem, config, subpop, cluster_rng)) candidates.push_back(std::move(x));
        }

        const std::size_t remaining = config.max_fe - evaluate.evaluations();
        if (candidates.size() > remaining) candidates.resize(remaining);

        Population offspring;
        offspring.reserve(candidates.size());
        objectives.clear();
        for (const auto& x : candidates) {
            offspring.push_back(evaluate(x));
            objectives.push_back(offspring.back().f);
        }
        if (offspring.empty()) break;
        result.z = update_reference_point(std::move(result.z), objectives);

        std::size_t replaced = 0;
        for (const auto& o : offspring) replaced += global_replacement_pass(o, population, result.lattice, result.z, config.rule);

        auto stats = population_stats(population, gen, evaluate.evaluations());
        stats.replacements = replaced;
        result.stats.push_back(stats);
        if (observer) observer(result.stats.back(), population);
    }

    result.fe_used = evaluate.evaluations();
    return result;
}

RunResult run_random_search(const Problem& problem, const AlgoConfig& config) {
    problem.validate();
    if (config.max_fe < 1) throw ConfigError("evaluation budget must be >= 1");

    Rng rng(config.seed);
    Evaluator evaluate(problem, config.eq_tol);
    RunResult result;

    Population archive;
    std::optional<Solution> least_violating;
    for (std::size_t i = 0; i < config.max_fe; ++i) {
        Solution s = evaluate(random_point(problem, rng));
        if (!s.feasible) {
            if (!least_violating || s.cv < least_violating->cv) least_violating = std::move(s);
            continue;
        }
        bool dominated = false;
        for (const auto& a : archive) {
            if (dominates(a.f, s.f) || a.f == s.f) {
                dominated = true;
                break;
            }
        }
        if (dominated) continue;
        std::erase_if(archive, [&](const Solution& a) { return dominates(s.f, a.f); });
        archive.push_back(std::move(s));
    }
    if (archive.empty() && least_violating) archive.push_back(std::move(*least_violating));

    result.population = std::move(archive);
    result.fe_used = evaluate.evaluations();
    result.stats.push_back(population_stats(result.population, 0, result.fe_used));
    return result;
}

}  // namespace imcmoead
