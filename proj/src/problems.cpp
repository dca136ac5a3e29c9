#include "imcmoead/problems.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace imcmoead {

void ProblemRegistry::add(const std::string& name, Factory factory) { factories_[name] = std::move(factory); }

bool ProblemRegistry::contains(const std::string& name) const { return factories_.count(name) != 0; }

ProblemSpec ProblemRegistry::make(const std::string& name) const {
    auto it = factories_.find(name);
    if (it == factories_.end()) throw std::out_of_range(fmt::format("unknown problem '{}'", name));
    return it->second();
}

std::vector<std::string> ProblemRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : factories_) out.push_back(name);
    return out;
}

namespace {

double sq(double v) { return v * v; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = 0.5 * (lo + hi);
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return out;
}

}  // namespace

ProblemSpec make_bnh() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "BNH";
    p.m = 2;
    p.d = 2;
    p.ng = 2;
    p.lower = {0.0, 0.0};
    p.upper = {5.0, 3.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {4.0 * sq(x[0]) + 4.0 * sq(x[1]), sq(x[0] - 5.0) + sq(x[1] - 5.0)};
        e.g = {sq(x[0] - 5.0) + sq(x[1]) - 25.0, 7.7 - sq(x[0] - 8.0) - sq(x[1] + 3.0)};
        return e;
    };
    return spec;
}

ProblemSpec make_srn() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "SRN";
    p.m = 2;
    p.d = 2;
    p.ng = 2;
    p.lower = {-20.0, -20.0};
    p.upper = {20.0, 20.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {2.0 + sq(x[0] - 2.0) + sq(x[1] - 1.0), 9.0 * x[0] - sq(x[1] - 1.0)};
        e.g = {sq(x[0]) + sq(x[1]) - 225.0, x[0] - 3.0 * x[1] + 10.0};
        return e;
    };
    return spec;
}

ProblemSpec make_tnk() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "TNK";
    p.m = 2;
    p.d = 2;
    p.ng = 2;
    p.lower = {0.0, 0.0};
    p.upper = {std::numbers::pi, std::numbers::pi};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {x[0], x[1]};
        // atan2 equals atan(x1/x2) on the box and is defined at x2 = 0.
        e.g = {-sq(x[0]) - sq(x[1]) + 1.0 + 0.1 * std::cos(16.0 * std::atan2(x[0], x[1])),
               sq(x[0] - 0.5) + sq(x[1] - 0.5) - 0.5};
        return e;
    };
    return spec;
}

ProblemSpec make_osy() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "OSY";
    p.m = 2;
    p.d = 6;
    p.ng = 6;
    p.lower = {0.0, 0.0, 1.0, 0.0, 1.0, 0.0};
    p.upper = {10.0, 10.0, 5.0, 6.0, 5.0, 10.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {-(25.0 * sq(x[0] - 2.0) + sq(x[1] - 2.0) + sq(x[2] - 1.0) + sq(x[3] - 4.0) + sq(x[4] - 1.0)),
               sq(x[0]) + sq(x[1]) + sq(x[2]) + sq(x[3]) + sq(x[4]) + sq(x[5])};
        e.g = {2.0 - x[0] - x[1],
               x[0] + x[1] - 6.0,
               x[1] - x[0] - 2.0,
               x[0] - 3.0 * x[1] - 2.0,
               sq(x[2] - 3.0) + x[3] - 4.0,
               4.0 - sq(x[4] - 3.0) - x[5]};
        return e;
    };
    // Known Pareto-optimal segments; the oracle filters them for feasibility
    // and nondominance.
    spec.pareto_set_sampler = [](std::size_t resolution) {
        const std::size_t per_segment = std::max<std::size_t>(resolution / 5, 2);
        std::vector<Vector> out;
        auto add = [&](Vector x) { out.push_back(std::move(x)); };
        for (double t : linspace(0.0, 1.0, per_segment)) {
            add({5.0, 1.0, 1.0 + 4.0 * t, 0.0, 5.0, 0.0});
            add({5.0, 1.0, 1.0 + 4.0 * t, 0.0, 1.0, 0.0});
            const double x1 = 4.056 + (5.0 - 4.056) * t;
            add({x1, (x1 - 2.0) / 3.0, 1.0, 0.0, 1.0, 0.0});
            add({0.0, 2.0, 1.0 + (3.732 - 1.0) * t, 0.0, 1.0, 0.0});
            add({t, 2.0 - t, 1.0, 0.0, 1.0, 0.0});
        }
        return out;
    };
    return spec;
}

ProblemSpec make_constr_ring() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "CONSTR-RING";
    p.m = 2;
    p.d = 2;
    p.ng = 2;
    p.lower = {0.1, 0.0};
    p.upper = {1.0, 5.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {x[0], (1.0 + x[1]) / x[0]};
        e.g = {6.0 - x[1] - 9.0 * x[0], 1.0 + x[1] - 9.0 * x[0]};
        return e;
    };
    return spec;
}

ProblemSpec make_sphere2() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "SPHERE-2";
    p.m = 2;
    p.d = 1;
    p.lower = {-2.0};
    p.upper = {2.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {sq(x[0]), sq(x[0] - 1.0)};
        return e;
    };
    spec.pareto_set_sampler = [](std::size_t resolution) {
        std::vector<Vector> out;
        for (double x : linspace(0.0, 1.0, std::max<std::size_t>(resolution, 2))) out.push_back({x});
        return out;
    };
    return spec;
}

ProblemSpec make_eq_line() {
    ProblemSpec spec;
    auto& p = spec.problem;
    p.name = "EQ-LINE";
    p.m = 2;
    p.d = 2;
    p.nh = 1;
    p.lower = {0.0, 0.0};
    p.upper = {1.0, 1.0};
    p.evaluate = [](std::span<const double> x) {
        Evaluation e;
        e.f = {x[0], sq(x[1])};
        e.h = {x[0] + x[1] - 1.0};
        return e;
    };
    // Substituting x2 = 1 - x1 gives the front (t, (1 - t)^2).
    spec.pareto_set_sampler = [](std::size_t resolution) {
        std::vector<Vector> out;
        for (double t : linspace(0.0, 1.0, std::max<std::size_t>(resolution, 2))) out.push_back({t, 1.0 - t});
        return out;
    };
    return spec;
}

std::vector<ProblemSpec> builtin_suite() {
    return {make_bnh(), make_srn(), make_tnk(), make_osy(), make_constr_ring(), make_sphere2(), make_eq_line()};
}

ProblemRegistry& default_registry() {
    static ProblemRegistry registry = [] {
        ProblemRegistry r;
        r.add("BNH", make_bnh);
        r.add("SRN", make_srn);
        r.add("TNK", make_tnk);
        r.add("OSY", make_osy);
        r.add("CONSTR-RING", make_constr_ring);
        r.add("SPHERE-2", make_sphere2);
        r.add("EQ-LINE", make_eq_line);
        return r;
    }();
    return registry;
}

std::size_t default_grid_resolution(std::size_t d) {
    std::size_t per_axis = 2;
    auto total = [&](std::size_t r) {
        double t = 1.0;
        for (std::size_t i = 0; i < d; ++i) t *= static_cast<double>(r);
        return t;
    };
    while (total(per_axis) < 1e6) ++per_axis;
    return per_axis;
}

std::vector<Vector> brute_force_front(const Problem& problem, std::size_t per_axis, double eq_tol) {
    if (problem.d > kMaxBruteForceVariables)
        throw UnsupportedOracle(fmt::format("problem '{}': {} variables is too many for grid brute force",
                                            problem.name, problem.d));
    if (per_axis < 1) throw ConfigError("brute force needs at least one point per axis");

    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < problem.d; ++i) axes.push_back(linspace(problem.lower[i], problem.upper[i], per_axis));

    std::vector<Vector> feasible;
    std::vector<std::size_t> idx(problem.d, 0);
    Vector x(problem.d);
    while (true) {
        for (std::size_t i = 0; i < problem.d; ++i) x[i] = axes[i][idx[i]];
        Evaluation e = problem.evaluate(x);
        if (constraint_violation(e.g, e.h, eq_tol) == 0.0) feasible.push_back(std::move(e.f));

        std::size_t k = 0;
        while (k < problem.d && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == problem.d) break;
    }
    return nondominated(std::move(feasible));
}

std::vector<Vector> reference_front(const ProblemSpec& spec, std::size_t resolution, double eq_tol) {
    const Problem& p = spec.problem;
    if (spec.pareto_set_sampler) {
        const std::size_t n = resolution != 0 ? resolution : 10000;
        std::vector<Vector> front;
        for (const auto& x : spec.pareto_set_sampler(n)) {
            Evaluation e = p.evaluate(x);
            if (constraint_violation(e.g, e.h, eq_tol) == 0.0) front.push_back(std::move(e.f));
        }
        return nondominated(std::move(front));
    }
    if (p.d > kMaxBruteForceVariables)
        throw UnsupportedOracle(fmt::format("problem '{}' has no front sampler and too many variables", p.name));
    return brute_force_front(p, resolution != 0 ? resolution : default_grid_resolution(p.d), eq_tol);
}

}  // namespace imcmoead
