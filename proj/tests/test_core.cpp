#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "imcmoead/core.hpp"
#include "imcmoead/problems.hpp"
#include "imcmoead/rng.hpp"

using namespace imcmoead;

namespace {

Problem toy_line() {
    Problem p;
    p.name = "toy";
    p.m = 2;
    p.d = 1;
    p.lower = {0.0};
    p.upper = {1.0};
    p.evaluate = [](std::span<const double> x) { return Evaluation{{x[0], 1.0 - x[0]}, {}, {}}; };
    return p;
}

Problem shifted_bound() {
    Problem p = toy_line();
    p.ng = 1;
    p.upper = {3.0};
    p.evaluate = [](std::span<const double> x) { return Evaluation{{x[0], -x[0]}, {x[0] - 1.0}, {}}; };
    return p;
}

}  // namespace

TEST_CASE("constraint_violation sums positive parts") {
    CHECK(constraint_violation(std::vector{-0.2, 0.3}, std::vector<double>{}, 1e-4) == doctest::Approx(0.3));
    CHECK(constraint_violation(std::vector<double>{}, std::vector{5e-5}, 1e-4) == 0.0);
    // 0.1 + 0.2 + (0.001 - 0.0001)
    CHECK(constraint_violation(std::vector{0.1, 0.2}, std::vector{-0.001}, 1e-4) == doctest::Approx(0.3009).epsilon(1e-12));
    CHECK(constraint_violation(std::vector<double>{}, std::vector<double>{}) == 0.0);
}

TEST_CASE("constraint_violation is nonnegative and monotone") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> g(rng.index(4));
        std::vector<double> h(rng.index(3));
        for (auto& v : g) v = rng.uniform(-1.0, 1.0);
        for (auto& v : h) v = rng.uniform(-1e-3, 1e-3);
        const double base = constraint_violation(g, h);
        CHECK(base >= 0.0);
        CHECK((base == 0.0) == (std::all_of(g.begin(), g.end(), [](double v) { return v <= 0.0; }) &&
                                std::all_of(h.begin(), h.end(), [](double v) { return std::abs(v) <= 1e-4; })));
        if (!g.empty()) {
            auto g2 = g;
            g2[rng.index(g2.size())] += rng.uniform(0.0, 1.0);
            CHECK(constraint_violation(g2, h) >= base);
        }
        if (!h.empty()) {
            auto h2 = h;
            auto& v = h2[rng.index(h2.size())];
            v += (v < 0 ? -1.0 : 1.0) * rng.uniform(0.0, 1.0);
            CHECK(constraint_violation(g, h2) >= base);
        }
    }
}

TEST_CASE("evaluate_solution wraps evaluation") {
    const Problem toy = toy_line();
    Solution s = evaluate_solution(toy, std::vector{0.3});
    CHECK(s.f[0] == doctest::Approx(0.3));
    CHECK(s.f[1] == doctest::Approx(0.7));
    CHECK(s.cv == 0.0);
    CHECK(s.feasible);

    const Problem bounded = shifted_bound();
    Solution t = evaluate_solution(bounded, std::vector{2.0});
    REQUIRE(t.g.size() == 1);
    CHECK(t.g[0] == 1.0);
    CHECK(t.cv == 1.0);
    CHECK_FALSE(t.feasible);

    // BNH at (1, 1): 4 + 4 and 16 + 16.
    const auto bnh = make_bnh().problem;
    Solution b = evaluate_solution(bnh, std::vector{1.0, 1.0});
    CHECK(b.f[0] == doctest::Approx(8.0));
    CHECK(b.f[1] == doctest::Approx(32.0));
    CHECK(b.cv == 0.0);
}

TEST_CASE("evaluate_solution rejects out-of-bounds input") {
    const Problem toy = toy_line();
    CHECK_THROWS_AS(evaluate_solution(toy, std::vector{1.5}), std::out_of_range);
    CHECK_THROWS_AS(evaluate_solution(toy, std::vector{0.5, 0.5}), std::out_of_range);
}

TEST_CASE("Evaluator counts evaluations across threads") {
    const Problem toy = toy_line();
    Evaluator eval(toy);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&] {
            for (int i = 0; i < 250; ++i) eval(std::vector{0.5});
        });
    for (auto& t : threads) t.join();
    CHECK(eval.evaluations() == 1000);
}

TEST_CASE("update_reference_point takes componentwise minima") {
    auto z = update_reference_point({{1.0, 2.0}}, std::vector<Vector>{{0.5, 3.0}});
    CHECK(z.z == Vector{0.5, 2.0});
    z = update_reference_point({{0.0, 0.0}}, std::vector<Vector>{{1.0, 1.0}, {2.0, 2.0}});
    CHECK(z.z == Vector{0.0, 0.0});
    z = update_reference_point({{5.0, 5.0}}, std::vector<Vector>{{3.0, 9.0}, {9.0, 3.0}});
    CHECK(z.z == Vector{3.0, 3.0});
    CHECK_THROWS(update_reference_point({{0.0, 0.0}}, std::vector<Vector>{}));
}

TEST_CASE("update_reference_point is idempotent and non-increasing") {
    Rng rng(3);
    ReferencePoint z{{10.0, 10.0, 10.0}};
    for (int gen = 0; gen < 50; ++gen) {
        std::vector<Vector> off(5, Vector(3));
        for (auto& f : off)
            for (auto& v : f) v = rng.uniform(-5.0, 15.0);
        const auto next = update_reference_point(z, off);
        for (std::size_t j = 0; j < 3; ++j) CHECK(next.z[j] <= z.z[j]);
        CHECK(update_reference_point(next, off).z == next.z);
        z = next;
    }
}

TEST_CASE("nondominated filter") {
    std::vector<Vector> pts{{1, 3}, {2, 2}, {3, 1}, {2, 3}, {2, 2}, {4, 4}};
    CHECK(nondominated(pts) == std::vector<Vector>{{1, 3}, {2, 2}, {3, 1}});

    std::vector<Vector> pts3{{1, 2, 3}, {3, 2, 1}, {2, 2, 2}, {3, 3, 3}, {1, 2, 4}};
    CHECK(nondominated(pts3) == std::vector<Vector>{{1, 2, 3}, {2, 2, 2}, {3, 2, 1}});
}

TEST_CASE("Problem::validate catches bad shapes") {
    Problem p = toy_line();
    CHECK_NOTHROW(p.validate());
    p.upper = {0.0};
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = toy_line();
    p.m = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
