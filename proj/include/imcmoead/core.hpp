#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace imcmoead {

using Vector = std::vector<double>;

/// Raised for invalid configuration values (bad m, H, budget, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raw output of a problem evaluation.
struct Evaluation {
    Vector f;  ///< m objective values (minimized)
    Vector g;  ///< ng inequality values, feasible when g_j <= 0
    Vector h;  ///< nh equality values, feasible when |h_j| <= eq_tol
};

/// A constrained multi-objective minimization problem.
///
/// `evaluate` must be deterministic and reentrant: it is called concurrently
/// from harness workers.
struct Problem {
    std::string name;
    std::size_t m = 2;
    std::size_t d = 1;
    std::size_t ng = 0;
    std::size_t nh = 0;
    Vector lower;
    Vector upper;
    std::function<Evaluation(std::span<const double>)> evaluate;

    /// Checks shape invariants; throws ConfigError when violated.
    void validate() const;
    bool in_bounds(std::span<const double> x) const;
    Vector clip(Vector x) const;
};

struct Solution {
    Vector x;
    Vector f;
    Vector g;
    Vector h;
    double cv = 0.0;
    bool feasible = true;
};

/// Member j is associated with weight vector j.
using Population = std::vector<Solution>;

/// Ideal-point estimate used by the Tchebycheff scalarization.
struct ReferencePoint {
    Vector z;
};

inline constexpr double kDefaultEqualityTolerance = 1e-4;

/// Sum of positive inequality values plus equality residuals beyond eq_tol.
double constraint_violation(std::span<const double> g, std::span<const double> h,
                            double eq_tol = kDefaultEqualityTolerance);

/// Wraps a Problem, computes CV/feasibility, and counts function evaluations.
/// The counter is atomic so one evaluator may be shared between threads.
class Evaluator {
public:
    explicit Evaluator(const Problem& problem, double eq_tol = kDefaultEqualityTolerance);

    /// Throws std::out_of_range when x is outside the box or has the wrong size.
    Solution operator()(std::span<const double> x) const;

    std::size_t evaluations() const { return count_.load(std::memory_order_relaxed); }
    const Problem& problem() const { return problem_; }
    double eq_tol() const { return eq_tol_; }

private:
    const Problem& problem_;
    double eq_tol_;
    mutable std::atomic<std::size_t> count_{0};
};

Solution evaluate_solution(const Problem& problem, std::span<const double> x,
                           double eq_tol = kDefaultEqualityTolerance);

/// Componentwise min of the objectives in `front`. Throws on empty input.
ReferencePoint ideal_point(std::span<const Vector> front);

/// z_j <- min(z_j, min over offspring f_j). Throws on empty offspring.
ReferencePoint update_reference_point(ReferencePoint z, std::span<const Vector> offspring_objectives);

/// Pareto dominance for minimization.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Returns the nondominated subset with exact duplicates removed, sorted
/// lexicographically.
std::vector<Vector> nondominated(std::vector<Vector> points);

/// Verbosity switch for warnings written to stderr.
void set_warnings_enabled(bool enabled);
void warn(const std::string& message);

}  // namespace imcmoead
