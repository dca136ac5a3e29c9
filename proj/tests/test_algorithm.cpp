#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "imcmoead/algorithm.hpp"
#include "imcmoead/metrics.hpp"
#include "imcmoead/problems.hpp"
#include "imcmoead/scalarize.hpp"

using namespace imcmoead;

namespace {

Solution sol(Vector f, double cv) {
    Solution s;
    s.x = {0.0};
    s.f = std::move(f);
    s.cv = cv;
    s.feasible = cv == 0.0;
    return s;
}

WeightLattice three_weights(std::size_t T) {
    WeightLattice lattice;
    lattice.weights = {{1, 0}, {0.5, 0.5}, {0, 1}};
    lattice.T = T;
    lattice.neighborhoods = build_neighborhoods(lattice.weights, T);
    return lattice;
}

// Every point violates g(x) = 1 + x^2 <= 0.
Problem always_infeasible() {
    Problem p;
    p.name = "infeasible";
    p.m = 2;
    p.d = 2;
    p.ng = 1;
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};
    p.evaluate = [](std::span<const double> x) {
        return Evaluation{{x[0], x[1]}, {1.0 + x[0] * x[0] + x[1] * x[1]}, {}};
    };
    return p;
}

}  // namespace

TEST_CASE("replace_with_constraints scenarios") {
    const Vector lambda{0.5, 0.5};
    const Vector z{0, 0};

    const Solution o1 = sol({0, 0}, 0.5), x1 = sol({5, 5}, 0.0);
    CHECK(&replace_with_constraints(o1, x1, lambda, z) == &x1);

    const Solution o2 = sol({5, 5}, 0.0), x2 = sol({0, 0}, 0.2);
    CHECK(&replace_with_constraints(o2, x2, lambda, z) == &o2);

    const Solution o3 = sol({9, 9}, 0.1), x3 = sol({0, 0}, 0.5);
    CHECK(&replace_with_constraints(o3, x3, lambda, z) == &o3);
    const Solution o3t = sol({0, 0}, 0.5);
    CHECK(&replace_with_constraints(o3t, x3, lambda, z) == &x3);

    // TCH 0.3 against 0.4.
    const Solution o4 = sol({0.6, 0.2}, 0.0), x4 = sol({0.8, 0.1}, 0.0);
    CHECK(&replace_with_constraints(o4, x4, lambda, z) == &o4);
    CHECK(&replace_with_constraints(x4, o4, lambda, z) == &o4);
    const Solution o4t = sol({0.2, 0.8}, 0.0);
    CHECK(&replace_with_constraints(o4t, x4, lambda, z) == &x4);
}

TEST_CASE("conjunctive rule needs both criteria") {
    const Vector lambda{0.5, 0.5};
    const Vector z{0, 0};
    // Better TCH, worse CV.
    CHECK_FALSE(offspring_survives(sol({0, 0}, 0.3), sol({1, 1}, 0.1), lambda, z, ReplacementRule::Conjunctive));
    // Better CV, worse TCH.
    CHECK_FALSE(offspring_survives(sol({2, 2}, 0.1), sol({1, 1}, 0.3), lambda, z, ReplacementRule::Conjunctive));
    CHECK(offspring_survives(sol({0.5, 0.5}, 0.1), sol({1, 1}, 0.3), lambda, z, ReplacementRule::Conjunctive));
    CHECK(offspring_survives(sol({2, 2}, 0.1), sol({1, 1}, 0.3), lambda, z, ReplacementRule::FourScenario));

    CHECK(replacement_rule_from_string("four-scenario") == ReplacementRule::FourScenario);
    CHECK(replacement_rule_from_string("conjunctive") == ReplacementRule::Conjunctive);
    CHECK(to_string(ReplacementRule::Conjunctive) == "conjunctive");
    CHECK_THROWS_AS(replacement_rule_from_string("other"), ConfigError);
}

TEST_CASE("global_replacement_pass examples") {
    const ReferencePoint z{{0, 0}};

    SUBCASE("dominated and more violating offspring changes nothing") {
        const auto lattice = three_weights(2);
        Population pop{sol({1, 1}, 0.1), sol({1, 1}, 0.1), sol({1, 1}, 0.1)};
        CHECK(global_replacement_pass(sol({2, 2}, 0.5), pop, lattice, z) == 0);
        for (const auto& s : pop) CHECK(s.f == Vector{1, 1});
    }

    SUBCASE("feasible offspring takes an infeasible neighborhood") {
        const auto lattice = three_weights(3);
        Population pop{sol({0, 0}, 0.1), sol({0, 0}, 0.2), sol({0, 0}, 0.3)};
        CHECK(global_replacement_pass(sol({4, 4}, 0.0), pop, lattice, z) == 3);
        for (const auto& s : pop) CHECK(s.feasible);
    }

    SUBCASE("hand trace with T = 2") {
        // Offspring (0.2, 0.2) picks weight 1; B(1) = {1, 0}. Slot 1 has TCH
        // 0.05 < 0.1 and stays; slot 0 has TCH 0.5 > 0.2 and is replaced.
        const auto lattice = three_weights(2);
        REQUIRE(lattice.neighborhoods[1] == std::vector<std::size_t>{1, 0});
        Population pop{sol({0.5, 0.0}, 0.0), sol({0.1, 0.1}, 0.0), sol({0.0, 0.05}, 0.0)};
        CHECK(global_replacement_pass(sol({0.2, 0.2}, 0.0), pop, lattice, z) == 1);
        CHECK(pop[0].f == Vector{0.2, 0.2});
        CHECK(pop[1].f == Vector{0.1, 0.1});
        CHECK(pop[2].f == Vector{0.0, 0.05});
    }
}

TEST_CASE("run converges on the convex toy") {
    const auto spec = make_sphere2();
    AlgoConfig cfg;
    cfg.N = 40;
    cfg.max_fe = 5000;
    cfg.seed = 1;
    const auto result = run(spec.problem, cfg);
    CHECK(result.fe_used == 5000);

    std::vector<Vector> front;
    for (const auto& s : result.population)
        if (s.feasible) front.push_back(s.f);
    const Vector ref{1.1, 1.1};
    // Area under 1.1 - (1 - sqrt(f1))^2 on [0, 1] plus the 0.1 x 1.1 strip.
    const double analytic = 0.1 + 4.0 / 3.0 - 0.5 + 0.11;
    CHECK(hypervolume_exact(front, ref) >= 0.95 * analytic);
}

TEST_CASE("run on an infeasible problem reduces violation monotonically") {
    const Problem p = always_infeasible();
    AlgoConfig cfg;
    cfg.N = 30;
    cfg.max_fe = 1500;
    cfg.seed = 4;
    std::vector<double> mean_cv;
    const auto result = run(p, cfg, [&](const GenerationStats& st, const Population&) { mean_cv.push_back(st.mean_cv); });
    REQUIRE(mean_cv.size() >= 2);
    for (std::size_t k = 1; k < mean_cv.size(); ++k) CHECK(mean_cv[k] <= mean_cv[k - 1]);
    CHECK(mean_cv.back() < mean_cv.front());
    CHECK(result.stats.back().feasible == 0);
}

TEST_CASE("run is deterministic for a seed") {
    const auto spec = make_bnh();
    AlgoConfig cfg;
    cfg.N = 30;
    cfg.max_fe = 900;
    cfg.seed = 11;
    const auto a = run(spec.problem, cfg);
    const auto b = run(spec.problem, cfg);
    REQUIRE(a.population.size() == b.population.size());
    for (std::size_t i = 0; i < a.population.size(); ++i) CHECK(a.population[i].x == b.population[i].x);
    cfg.seed = 12;
    const auto c = run(spec.problem, cfg);
    bool differs = false;
    for (std::size_t i = 0; i < a.population.size(); ++i) differs = differs || a.population[i].x != c.population[i].x;
    CHECK(differs);
}

TEST_CASE("run rejects budgets below one population") {
    AlgoConfig cfg;
    cfg.N = 50;
    cfg.max_fe = 49;
    CHECK_THROWS_AS(run(make_bnh().problem, cfg), ConfigError);
}

TEST_CASE("run spends exactly the budget and keeps invariants") {
    const auto spec = make_constr_ring();
    for (std::size_t budget : {40u, 41u, 95u, 333u}) {
        AlgoConfig cfg;
        cfg.N = 40;
        cfg.max_fe = budget;
        cfg.seed = budget;
        std::size_t last_fe = 0;
        std::vector<bool> was_feasible;
        std::vector<double> last_cv;
        const auto result = run(spec.problem, cfg, [&](const GenerationStats& st, const Population& pop) {
            CHECK(st.fe_used >= last_fe);
            CHECK(st.fe_used <= budget);
            last_fe = st.fe_used;
            if (was_feasible.empty()) {
                was_feasible.assign(pop.size(), false);
                last_cv.assign(pop.size(), 0.0);
                for (std::size_t i = 0; i < pop.size(); ++i) last_cv[i] = pop[i].cv;
            }
            for (std::size_t i = 0; i < pop.size(); ++i) {
                if (was_feasible[i]) CHECK(pop[i].feasible);
                CHECK(pop[i].cv <= last_cv[i]);
                was_feasible[i] = was_feasible[i] || pop[i].feasible;
                last_cv[i] = pop[i].cv;
                CHECK(spec.problem.in_bounds(pop[i].x));
            }
        });
        CHECK(result.fe_used == budget);
        CHECK(result.population.size() == 40);
    }
}

TEST_CASE("reference point is the minimum seen") {
    const auto spec = make_bnh();
    AlgoConfig cfg;
    cfg.N = 20;
    cfg.max_fe = 400;
    cfg.seed = 3;
    const auto result = run(spec.problem, cfg);
    for (const auto& s : result.population)
        for (std::size_t j = 0; j < 2; ++j) CHECK(result.z.z[j] <= s.f[j]);
}

TEST_CASE("random search baseline") {
    const auto spec = make_bnh();
    AlgoConfig cfg;
    cfg.N = 20;
    cfg.max_fe = 500;
    cfg.seed = 2;
    const auto result = run_random_search(spec.problem, cfg);
    CHECK(result.fe_used == 500);
    REQUIRE_FALSE(result.population.empty());
    for (const auto& a : result.population) {
        CHECK(a.feasible);
        for (const auto& b : result.population) CHECK_FALSE(dominates(b.f, a.f));
    }

    const auto none = run_random_search(always_infeasible(), cfg);
    REQUIRE(none.population.size() == 1);
    CHECK_FALSE(none.population[0].feasible);
}
