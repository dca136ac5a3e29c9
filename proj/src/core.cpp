#include "imcmoead/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>

#include <fmt/core.h>

namespace imcmoead {

void Problem::validate() const {
    if (m < 2) throw ConfigError(fmt::format("problem '{}': needs at least 2 objectives", name));
    if (d < 1) throw ConfigError(fmt::format("problem '{}': needs at least 1 variable", name));
    if (lower.size() != d || upper.size() != d)
        throw ConfigError(fmt::format("problem '{}': bounds must have length {}", name, d));
    for (std::size_t i = 0; i < d; ++i) {
        if (!(lower[i] < upper[i]))
            throw ConfigError(fmt::format("problem '{}': lower[{}] must be < upper[{}]", name, i, i));
    }
    if (!evaluate) throw ConfigError(fmt::format("problem '{}': missing evaluate", name));
}

bool Problem::in_bounds(std::span<const double> x) const {
    if (x.size() != d) return false;
    for (std::size_t i = 0; i < d; ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

Vector Problem::clip(Vector x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
    return x;
}

double constraint_violation(std::span<const double> g, std::span<const double> h, double eq_tol) {
    double cv = 0.0;
    for (double gj : g) cv += std::max(gj, 0.0);
    for (double hj : h) cv += std::max(std::abs(hj) - eq_tol, 0.0);
    return cv;
}

Evaluator::Evaluator(const Problem& problem, double eq_tol) : problem_(problem), eq_tol_(eq_tol) {}

Solution Evaluator::operator()(std::span<const double> x) const {
    if (!problem_.in_bounds(x))
        throw std::out_of_range(fmt::format("problem '{}': decision vector outside bounds", problem_.name));
    Evaluation e = problem_.evaluate(x);
    count_.fetch_add(1, std::memory_order_relaxed);
    if (e.f.size() != problem_.m || e.g.size() != problem_.ng || e.h.size() != problem_.nh)
        throw std::logic_error(fmt::format("problem '{}': evaluate returned wrong shapes", problem_.name));

    Solution s;
    s.x.assign(x.begin(), x.end());
    s.cv = constraint_violation(e.g, e.h, eq_tol_);
    s.feasible = s.cv == 0.0;
    s.f = std::move(e.f);
    s.g = std::move(e.g);
    s.h = std::move(e.h);
    return s;
}

Solution evaluate_solution(const Problem& problem, std::span<const double> x, double eq_tol) {
    return Evaluator(problem, eq_tol)(x);
}

ReferencePoint ideal_point(std::span<const Vector> front) {
    if (front.empty()) throw std::invalid_argument("ideal_point: empty set");
    ReferencePoint z{front.front()};
    return update_reference_point(std::move(z), front);
}

ReferencePoint update_reference_point(ReferencePoint z, std::span<const Vector> offspring_objectives) {
    if (offspring_objectives.empty()) throw std::invalid_argument("update_reference_point: no offspring");
    for (const auto& f : offspring_objectives) {
        for (std::size_t j = 0; j < z.z.size(); ++j) z.z[j] = std::min(z.z[j], f[j]);
    }
    return z;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    bool strictly = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) return false;
        if (a[j] < b[j]) strictly = true;
    }
    return strictly;
}

std::vector<Vector> nondominated(std::vector<Vector> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return points;

    std::vector<Vector> kept;
    if (points.front().size() == 2) {
        // Lexicographic order: a point survives iff its f2 beats every earlier f2.
        double best = std::numeric_limits<double>::infinity();
        for (auto& p : points) {
            if (p[1] < best) {
                best = p[1];
                kept.push_back(std::move(p));
            }
        }
        return kept;
    }
    // A point can only be dominated by a lexicographically smaller one.
    for (auto& p : points) {
        bool dominated = false;
        for (const auto& k : kept) {
            if (dominates(k, p)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(std::move(p));
    }
    return kept;
}

namespace {
std::atomic<bool> g_warnings{true};
std::mutex g_warn_mutex;
}  // namespace

void set_warnings_enabled(bool enabled) { g_warnings = enabled; }

void warn(const std::string& message) {
    if (!g_warnings) return;
    std::lock_guard lock(g_warn_mutex);
    std::cerr << "warning: " << message << '\n';
}

}  // namespace imcmoead
