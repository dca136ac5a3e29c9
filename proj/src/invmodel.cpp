#include "imcmoead/invmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

namespace imcmoead {

namespace {

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) return upper;
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

}  // namespace

UnivariateGP::Hyperparameters UnivariateGP::heuristic_hyperparameters(std::span<const double> inputs,
                                                                       std::span<const double> targets) {
    Hyperparameters hp;

    std::vector<double> gaps;
    gaps.reserve(inputs.size() * (inputs.size() - 1) / 2);
    for (std::size_t a = 0; a < inputs.size(); ++a)
        for (std::size_t b = a + 1; b < inputs.size(); ++b) gaps.push_back(std::abs(inputs[a] - inputs[b]));
    const double ell = gaps.empty() ? 0.0 : median(std::move(gaps));
    hp.lengthscale = ell > 0.0 ? ell : 1.0;

    const double n = static_cast<double>(targets.size());
    const double mean = std::accumulate(targets.begin(), targets.end(), 0.0) / n;
    double ss = 0.0;
    for (double t : targets) ss += (t - mean) * (t - mean);
    const double sd = std::sqrt(ss / n);
    const double signal_sd = sd > 0.0 ? sd : 1.0;
    hp.signal_variance = signal_sd * signal_sd;

    const double noise_sd = 0.01 * signal_sd + 1e-6;
    hp.noise_variance = noise_sd * noise_sd;
    return hp;
}

UnivariateGP UnivariateGP::fit(std::span<const double> inputs, std::span<const double> targets) {
    if (inputs.size() < 2 || inputs.size() != targets.size())
        throw DegenerateModel(fmt::format("GP needs at least 2 training pairs (got {})", inputs.size()));
    return fit(inputs, targets, heuristic_hyperparameters(inputs, targets));
}

UnivariateGP UnivariateGP::fit(std::span<const double> inputs, std::span<const double> targets, Hyperparameters hp) {
    const std::size_t n = inputs.size();
    if (n < 2 || n != targets.size())
        throw DegenerateModel(fmt::format("GP needs at least 2 training pairs (got {})", n));
    if (!(hp.lengthscale > 0.0) || !(hp.noise_variance > 0.0) || hp.signal_variance < 0.0)
        throw ConfigError("GP hyperparameters must satisfy lengthscale > 0, noise > 0, signal >= 0");

    UnivariateGP gp;
    gp.hp_ = hp;
    gp.inputs_.assign(inputs.begin(), inputs.end());
    gp.mean_ = std::accumulate(targets.begin(), targets.end(), 0.0) / static_cast<double>(n);

    Eigen::MatrixXd K(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b) K(a, b) = K(b, a) = gp.kernel(inputs[a], inputs[b]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
    if (eig.info() != Eigen::Success) throw DegenerateModel("GP kernel factorization failed");
    gp.eigenvectors_ = eig.eigenvectors();
    gp.inverse_eigenvalues_ = eig.eigenvalues().unaryExpr([&](double w) { return 1.0 / (std::max(w, 0.0) + hp.noise_variance); });

    Eigen::VectorXd centered(n);
    for (std::size_t i = 0; i < n; ++i) centered(i) = targets[i] - gp.mean_;
    gp.alpha_ = gp.eigenvectors_ * gp.inverse_eigenvalues_.cwiseProduct(gp.eigenvectors_.transpose() * centered);
    return gp;
}

double UnivariateGP::kernel(double a, double b) const {
    const double r = (a - b) / hp_.lengthscale;
    return hp_.signal_variance * std::exp(-0.5 * r * r);
}

UnivariateGP::Prediction UnivariateGP::predict(double query) const {
    const std::size_t n = inputs_.size();
    Eigen::VectorXd k(n);
    for (std::size_t i = 0; i < n; ++i) k(i) = kernel(query, inputs_[i]);

    Prediction p;
    p.mean = mean_ + k.dot(alpha_);
    const Eigen::VectorXd projected = eigenvectors_.transpose() * k;
    const double explained = projected.cwiseAbs2().dot(inverse_eigenvalues_);
    p.variance = std::max(hp_.signal_variance - explained, 0.0);
    return p;
}

double UnivariateGP::sample(double query, Rng& rng) const {
    const Prediction p = predict(query);
    return p.mean + rng.normal() * std::sqrt(p.variance + hp_.noise_variance);
}

UnivariateGP fit_gp(std::span<const double> inputs, std::span<const double> targets) {
    return UnivariateGP::fit(inputs, targets);
}

double gp_predict_sample(const UnivariateGP& gp, double query, Rng& rng) { return gp.sample(query, rng); }

GroupingPlan random_grouping(std::size_t m, std::size_t d, std::size_t L, Rng& rng) {
    if (L < 1) throw ConfigError("random_grouping: L must be >= 1");
    if (m < 1) throw ConfigError("random_grouping: m must be >= 1");
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Fisher-Yates with the portable index draw.
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

    GroupingPlan plan;
    plan.L = L;
    for (std::size_t start = 0; start < d; start += L) {
        VariableGroup group;
        group.objective = rng.index(m);
        const std::size_t stop = std::min(start + L, d);
        group.variables.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                               order.begin() + static_cast<std::ptrdiff_t>(stop));
        plan.groups.push_back(std::move(group));
    }
    return plan;
}

SubpopModel SubpopModel::build(std::span<const Solution> training, GroupingPlan plan) {
    if (training.size() < 2)
        throw DegenerateModel(fmt::format("inverse model needs at least 2 training solutions (got {})", training.size()));
    const std::size_t m = training.front().f.size();

    SubpopModel model;
    model.objective_ranges.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto [lo, hi] = std::minmax_element(training.begin(), training.end(),
                                            [j](const Solution& a, const Solution& b) { return a.f[j] < b.f[j]; });
        model.objective_ranges[j] = {lo->f[j], hi->f[j]};
    }

    std::vector<double> inputs(training.size());
    std::vector<double> targets(training.size());
    for (const auto& group : plan.groups) {
        for (std::size_t k = 0; k < training.size(); ++k) inputs[k] = training[k].f[group.objective];
        auto& fitted = model.gps.emplace_back();
        for (std::size_t var : group.variables) {
            for (std::size_t k = 0; k < training.size(); ++k) targets[k] = training[k].x[var];
            fitted.push_back(UnivariateGP::fit(inputs, targets));
        }
    }
    model.plan = std::move(plan);
    return model;
}

Vector SubpopModel::sample(Rng& rng) const {
    std::size_t d = 0;
    for (const auto& g : plan.groups) d += g.variables.size();
    Vector x(d, 0.0);
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        const auto& group = plan.groups[g];
        const Range r = objective_ranges[group.objective];
        const double margin = 0.1 * (r.hi - r.lo);
        const double query = rng.uniform(r.lo - margin, r.hi + margin);
        for (std::size_t k = 0; k < group.variables.size(); ++k) x[group.variables[k]] = gps[g][k].sample(query, rng);
    }
    return x;
}

std::vector<Vector> reproduce_subpop(std::span<const Solution> training, const GroupingPlan& plan,
                                     const Problem& problem, std::size_t count, Rng& rng) {
    std::vector<Vector> offspring;
    if (count == 0) return offspring;
    const SubpopModel model = SubpopModel::build(training, plan);
    offspring.reserve(count);
    for (std::size_t c = 0; c < count; ++c) offspring.push_back(problem.clip(model.sample(rng)));
    return offspring;
}

double polynomial_mutate_coordinate(double x, double lower, double upper, double u, double eta) {
    const double power = 1.0 / (eta + 1.0);
    double y;
    if (u < 0.5) {
        const double delta = std::pow(2.0 * u, power) - 1.0;
        y = x + delta * (x - lower);
    } else {
        const double delta = 1.0 - std::pow(2.0 * (1.0 - u), power);
        y = x + delta * (upper - x);
    }
    return std::clamp(y, lower, upper);
}

Vector polynomial_mutation(Vector x, std::span<const double> lower, std::span<const double> upper, double pm,
                           double eta, Rng& rng) {
    if (pm < 0.0 || pm > 1.0) throw ConfigError("polynomial_mutation: pm must lie in [0, 1]");
    if (!(eta > 0.0)) throw ConfigError("polynomial_mutation: eta must be > 0");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() >= pm) continue;
        x[i] = polynomial_mutate_coordinate(x[i], lower[i], upper[i], rng.uniform(), eta);
    }
    return x;
}

}  // namespace imcmoead
