#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "imcmoead/core.hpp"

namespace imcmoead {

/// A problem plus an optional closed-form sampler of its Pareto set.
struct ProblemSpec {
    Problem problem;
    /// Returns roughly `resolution` decision vectors on the true Pareto set.
    std::function<std::vector<Vector>(std::size_t resolution)> pareto_set_sampler;
};

class UnsupportedOracle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Named problem factories consulted by the harness and the CLI.
class ProblemRegistry {
public:
    using Factory = std::function<ProblemSpec()>;

    void add(const std::string& name, Factory factory);
    bool contains(const std::string& name) const;
    /// Throws std::out_of_range for unknown names.
    ProblemSpec make(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, Factory> factories_;
};

ProblemSpec make_bnh();
ProblemSpec make_srn();
ProblemSpec make_tnk();
ProblemSpec make_osy();
ProblemSpec make_constr_ring();
ProblemSpec make_sphere2();
ProblemSpec make_eq_line();

/// BNH, SRN, TNK, OSY, CONSTR-RING, SPHERE-2 and EQ-LINE.
std::vector<ProblemSpec> builtin_suite();

/// Registry pre-populated with builtin_suite(); further problems may be added.
ProblemRegistry& default_registry();

/// Largest grid brute force the oracle accepts.
inline constexpr std::size_t kMaxBruteForceVariables = 3;

/// Evaluates a full grid with `per_axis` points per variable and returns the
/// feasible nondominated objective vectors.
std::vector<Vector> brute_force_front(const Problem& problem, std::size_t per_axis,
                                      double eq_tol = kDefaultEqualityTolerance);

/// Points per axis giving at least one million grid points for d variables.
std::size_t default_grid_resolution(std::size_t d);

/// Dense feasible nondominated front: the Pareto-set sampler when present,
/// otherwise grid brute force (`resolution` points per axis, 0 = default).
/// Throws UnsupportedOracle when neither applies.
std::vector<Vector> reference_front(const ProblemSpec& spec, std::size_t resolution = 0,
                                    double eq_tol = kDefaultEqualityTolerance);

}  // namespace imcmoead
