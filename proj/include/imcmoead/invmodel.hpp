#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "imcmoead/core.hpp"
#include "imcmoead/rng.hpp"

namespace imcmoead {

/// Raised when a model cannot be fitted from the data given (fewer than two
/// training pairs). Callers fall back to mutation-only reproduction.
class DegenerateModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One-dimensional Gaussian process regressor with a squared-exponential
/// kernel, mapping an objective value to a decision-variable value.
///
/// The kernel matrix is factorized once at fit time as K = Q diag(w) Q^T;
/// eigenvalues that come out negative from rounding are clamped to zero. This
/// keeps predictions stable when the noise variance is tiny compared to the
/// conditioning of K.
class UnivariateGP {
public:
    struct Hyperparameters {
        double lengthscale = 1.0;
        double signal_variance = 1.0;
        double noise_variance = 1e-12;
    };

    struct Prediction {
        double mean = 0.0;
        double variance = 0.0;  ///< latent variance, excludes observation noise
    };

    /// Closed-form heuristics: lengthscale = median pairwise input distance
    /// (1 if all inputs coincide), signal std = std of targets (1 if zero),
    /// noise std = 0.01 * signal std + 1e-6.
    static Hyperparameters heuristic_hyperparameters(std::span<const double> inputs, std::span<const double> targets);

    /// Throws DegenerateModel for fewer than two pairs.
    static UnivariateGP fit(std::span<const double> inputs, std::span<const double> targets);
    static UnivariateGP fit(std::span<const double> inputs, std::span<const double> targets, Hyperparameters hp);

    Prediction predict(double query) const;

    /// Predictive mean plus a standard-normal draw times the predictive
    /// standard deviation of a noisy observation.
    double sample(double query, Rng& rng) const;

    const Hyperparameters& hyperparameters() const { return hp_; }
    std::size_t size() const { return inputs_.size(); }
    double target_mean() const { return mean_; }

private:
    double kernel(double a, double b) const;

    Hyperparameters hp_;
    std::vector<double> inputs_;
    double mean_ = 0.0;
    Eigen::MatrixXd eigenvectors_;
    Eigen::VectorXd inverse_eigenvalues_;  ///< 1 / (max(w_i, 0) + noise)
    Eigen::VectorXd alpha_;
};

UnivariateGP fit_gp(std::span<const double> inputs, std::span<const double> targets);
double gp_predict_sample(const UnivariateGP& gp, double query, Rng& rng);

/// Decision variables driven by one objective coordinate.
struct VariableGroup {
    std::size_t objective = 0;
    std::vector<std::size_t> variables;
};

struct GroupingPlan {
    std::vector<VariableGroup> groups;
    std::size_t L = 1;
};

/// Shuffles 0..d-1, cuts it into consecutive chunks of at most L indices and
/// assigns every chunk a uniformly random objective.
GroupingPlan random_grouping(std::size_t m, std::size_t d, std::size_t L, Rng& rng);

/// Inverse model of one subpopulation: one GP per covered variable.
struct SubpopModel {
    struct Range {
        double lo = 0.0;
        double hi = 0.0;
    };

    GroupingPlan plan;
    /// gps[g][k] models plan.groups[g].variables[k].
    std::vector<std::vector<UnivariateGP>> gps;
    /// Training range of every objective (indexed by objective).
    std::vector<Range> objective_ranges;

    /// Throws DegenerateModel when training has fewer than two members.
    static SubpopModel build(std::span<const Solution> training, GroupingPlan plan);

    /// One candidate decision vector (not clipped).
    Vector sample(Rng& rng) const;
};

/// Fits a SubpopModel and draws `count` decision vectors clipped to the box.
std::vector<Vector> reproduce_subpop(std::span<const Solution> training, const GroupingPlan& plan,
                                     const Problem& problem, std::size_t count, Rng& rng);

/// Polynomial mutation of a single coordinate for a given uniform draw u:
/// u < 0.5 moves toward the lower bound by (2u)^(1/(eta+1)) - 1 of (x - lower),
/// otherwise toward the upper bound by 1 - (2(1-u))^(1/(eta+1)) of (upper - x).
double polynomial_mutate_coordinate(double x, double lower, double upper, double u, double eta);

/// Mutates each coordinate independently with probability pm.
Vector polynomial_mutation(Vector x, std::span<const double> lower, std::span<const double> upper, double pm,
                           double eta, Rng& rng);

}  // namespace imcmoead
