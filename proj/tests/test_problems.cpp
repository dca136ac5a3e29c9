#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "imcmoead/metrics.hpp"
#include "imcmoead/problems.hpp"

using namespace imcmoead;

TEST_CASE("builtin shapes match evaluate") {
    Rng rng(1);
    const auto suite = builtin_suite();
    CHECK(suite.size() >= 7);
    for (const auto& spec : suite) {
        const auto& p = spec.problem;
        CAPTURE(p.name);
        CHECK_NOTHROW(p.validate());
        for (int k = 0; k < 50; ++k) {
            Vector x(p.d);
            for (std::size_t i = 0; i < p.d; ++i) x[i] = rng.uniform(p.lower[i], p.upper[i]);
            const auto e = p.evaluate(x);
            CHECK(e.f.size() == p.m);
            CHECK(e.g.size() == p.ng);
            CHECK(e.h.size() == p.nh);
        }
    }
}

TEST_CASE("registry lookups") {
    auto& reg = default_registry();
    for (const char* name : {"BNH", "SRN", "TNK", "OSY", "CONSTR-RING", "SPHERE-2", "EQ-LINE"}) {
        CHECK(reg.contains(name));
        CHECK(reg.make(name).problem.name == name);
    }
    CHECK_FALSE(reg.contains("nope"));
    CHECK_THROWS_AS(reg.make("nope"), std::out_of_range);

    ProblemRegistry local;
    local.add("custom", [] { return make_sphere2(); });
    CHECK(local.names() == std::vector<std::string>{"custom"});
}

TEST_CASE("point evaluations") {
    const auto bnh = make_bnh().problem;
    auto s = evaluate_solution(bnh, std::vector{1.0, 1.0});
    CHECK(s.f == Vector{8.0, 32.0});
    CHECK(s.cv == 0.0);

    // At (0.1, 0.1) atan(x1/x2) = pi/4 and cos(4 pi) = 1, so g1 = 1 - 0.02 + 0.1 = 1.08.
    const auto tnk = make_tnk().problem;
    auto t = evaluate_solution(tnk, std::vector{0.1, 0.1});
    const double g1 = -(0.02 - 1.0 - 0.1 * std::cos(16.0 * std::atan(1.0)));
    CHECK(t.cv > 0.0);
    CHECK(t.g[0] == doctest::Approx(g1));
    CHECK(t.cv == doctest::Approx(1.08));

    const auto sphere = make_sphere2().problem;
    auto u = evaluate_solution(sphere, std::vector{0.5});
    CHECK(u.f[0] == doctest::Approx(0.25));
    CHECK(u.f[1] == doctest::Approx(0.25));

    const auto ring = make_constr_ring().problem;
    auto r = evaluate_solution(ring, std::vector{0.5, 1.0});
    CHECK(r.f[0] == doctest::Approx(0.5));
    CHECK(r.f[1] == doctest::Approx(4.0));
    // 6 - (1 + 4.5) = 0.5 violation, second constraint holds.
    CHECK(r.cv == doctest::Approx(0.5));

    const auto eq = make_eq_line().problem;
    CHECK(evaluate_solution(eq, std::vector{0.3, 0.7}).feasible);
    CHECK_FALSE(evaluate_solution(eq, std::vector{0.3, 0.6}).feasible);
}

TEST_CASE("reference fronts are feasible and nondominated") {
    for (const auto& spec : builtin_suite()) {
        CAPTURE(spec.problem.name);
        const auto front = reference_front(spec, spec.pareto_set_sampler ? 2000 : 60);
        REQUIRE(front.size() >= 5);
        for (const auto& a : front)
            for (const auto& b : front) CHECK_FALSE(dominates(b, a));
    }
}

TEST_CASE("SPHERE-2 front endpoints") {
    const auto front = reference_front(make_sphere2());
    const auto [lo, hi] = std::minmax_element(front.begin(), front.end());
    CHECK((*lo)[0] == doctest::Approx(0.0));
    CHECK((*lo)[1] == doctest::Approx(1.0));
    CHECK((*hi)[0] == doctest::Approx(1.0));
    CHECK((*hi)[1] == doctest::Approx(0.0));
}

TEST_CASE("CONSTR-RING front ends on the x1 = 1 boundary") {
    auto spec = make_constr_ring();
    spec.pareto_set_sampler = nullptr;
    const auto front = reference_front(spec, 400);
    const auto last = *std::max_element(front.begin(), front.end());
    // x1 = 1, x2 = 0 gives (1, 1).
    CHECK(last[0] == doctest::Approx(1.0));
    CHECK(last[1] == doctest::Approx(1.0));
    const auto first = *std::min_element(front.begin(), front.end());
    // Both constraints active: x1 = 7/18, x2 = 2.5.
    CHECK(first[0] == doctest::Approx(7.0 / 18.0).epsilon(0.01));
    CHECK(first[1] == doctest::Approx(3.5 / (7.0 / 18.0)).epsilon(0.01));
}

TEST_CASE("EQ-LINE front follows the substituted curve") {
    const auto front = reference_front(make_eq_line());
    REQUIRE(front.size() > 100);
    for (const auto& f : front) CHECK(f[1] == doctest::Approx((1.0 - f[0]) * (1.0 - f[0])).epsilon(1e-9));
}

TEST_CASE("brute force front is monotone in resolution") {
    for (const auto& spec : builtin_suite()) {
        if (spec.problem.d > 2 || spec.problem.nh > 0) continue;
        CAPTURE(spec.problem.name);
        std::vector<Vector> all;
        const auto coarse = brute_force_front(spec.problem, 80);
        const auto fine = brute_force_front(spec.problem, 320);
        all.insert(all.end(), coarse.begin(), coarse.end());
        all.insert(all.end(), fine.begin(), fine.end());
        Vector ideal = all.front(), nadir = all.front();
        for (const auto& f : all)
            for (std::size_t j = 0; j < 2; ++j) {
                ideal[j] = std::min(ideal[j], f[j]);
                nadir[j] = std::max(nadir[j], f[j]);
            }
        auto norm = [&](const std::vector<Vector>& pts) {
            std::vector<Vector> out;
            for (const auto& f : pts)
                out.push_back({(f[0] - ideal[0]) / (nadir[0] - ideal[0]), (f[1] - ideal[1]) / (nadir[1] - ideal[1])});
            return out;
        };
        const Vector ref{1.1, 1.1};
        CHECK(hypervolume_exact(norm(fine), ref) >= hypervolume_exact(norm(coarse), ref) - 1e-3);
    }
}

TEST_CASE("reference_front refuses large problems without a sampler") {
    auto spec = make_osy();
    spec.pareto_set_sampler = nullptr;
    CHECK_THROWS_AS(reference_front(spec), UnsupportedOracle);
    CHECK(default_grid_resolution(1) >= 1000000);
    CHECK(default_grid_resolution(2) * default_grid_resolution(2) >= 1000000);
}
