#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "imcmoead/core.hpp"
#include "imcmoead/rng.hpp"

namespace imcmoead {

struct Partition {
    std::size_t K = 0;
    std::vector<std::size_t> assignments;  ///< point index -> cluster id
    std::vector<Vector> centroids;
    std::size_t iterations = 0;
    /// Within-cluster sum of squares after each Lloyd iteration.
    std::vector<double> sse_trace;

    std::vector<std::vector<std::size_t>> members() const;
};

inline constexpr std::size_t kDefaultKMeansIterations = 50;

/// Lloyd's k-means with k-means++ seeding. K larger than the number of points
/// is reduced (with a warning); emptied clusters take the point farthest from
/// its centroid.
Partition kmeans(std::span<const Vector> points, std::size_t K, std::size_t max_iters, Rng& rng);

/// k-means on the objective vectors of the population.
Partition kmeans_objective_space(const Population& population, std::size_t K, std::size_t max_iters, Rng& rng);

double within_cluster_sse(std::span<const Vector> points, const Partition& partition);

/// True when `a` wins a feasibility-first comparison against `b` outright:
/// feasible beats infeasible, lower CV beats higher CV, and between feasible
/// solutions Pareto dominance decides. Returns false for undecided pairs.
bool feasibility_first_better(const Solution& a, const Solution& b);

/// `count` binary tournaments on `subpop` with pairs drawn uniformly with
/// replacement. Undecided pairs are settled by a fair coin.
std::vector<Solution> tournament_select(std::span<const Solution> subpop, std::size_t count, Rng& rng);

}  // namespace imcmoead
