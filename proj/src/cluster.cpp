#include "imcmoead/cluster.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

namespace imcmoead {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

std::vector<Vector> seed_plus_plus(std::span<const Vector> points, std::size_t K, Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Vector> centroids;
    centroids.reserve(K);
    centroids.push_back(points[rng.index(n)]);

    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(points[i], centroids.back());

    while (centroids.size() < K) {
        double total = 0.0;
        for (double v : nearest) total += v;
        std::size_t pick = n - 1;
        if (total > 0.0) {
            double r = rng.uniform() * total;
            for (std::size_t i = 0; i < n; ++i) {
                r -= nearest[i];
                if (r < 0.0 && nearest[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = rng.index(n);
        }
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i)
            nearest[i] = std::min(nearest[i], squared_distance(points[i], centroids.back()));
    }
    return centroids;
}

void recompute_centroids(std::span<const Vector> points, Partition& p) {
    const std::size_t m = points.front().size();
    std::vector<std::size_t> sizes(p.K, 0);
    std::vector<Vector> sums(p.K, Vector(m, 0.0));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t c = p.assignments[i];
        ++sizes[c];
        for (std::size_t j = 0; j < m; ++j) sums[c][j] += points[i][j];
    }
    for (std::size_t c = 0; c < p.K; ++c) {
        if (sizes[c] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) p.centroids[c][j] = sums[c][j] / static_cast<double>(sizes[c]);
    }
}

// Gives each empty cluster the point farthest from its own centroid, taken
// from a cluster with at least two members.
void repair_empty_clusters(std::span<const Vector> points, Partition& p) {
    for (std::size_t c = 0; c < p.K; ++c) {
        std::vector<std::size_t> sizes(p.K, 0);
        for (std::size_t a : p.assignments) ++sizes[a];
        if (sizes[c] != 0) continue;

        std::size_t farthest = points.size();
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::size_t owner = p.assignments[i];
            if (sizes[owner] < 2) continue;
            const double dist = squared_distance(points[i], p.centroids[owner]);
            if (dist > far_d) {
                far_d = dist;
                farthest = i;
            }
        }
        if (farthest == points.size()) continue;
        p.assignments[farthest] = c;
        p.centroids[c] = points[farthest];
        recompute_centroids(points, p);
    }
}

}  // namespace

std::vector<std::vector<std::size_t>> Partition::members() const {
    std::vector<std::vector<std::size_t>> out(K);
    for (std::size_t i = 0; i < assignments.size(); ++i) out[assignments[i]].push_back(i);
    return out;
}

double within_cluster_sse(std::span<const Vector> points, const Partition& partition) {
    double sse = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        sse += squared_distance(points[i], partition.centroids[partition.assignments[i]]);
    return sse;
}

Partition kmeans(std::span<const Vector> points, std::size_t K, std::size_t max_iters, Rng& rng) {
    if (points.empty()) throw std::invalid_argument("kmeans: no points");
    if (K < 1) throw ConfigError("kmeans: K must be >= 1");
    if (K > points.size()) {
        warn(fmt::format("kmeans: K = {} exceeds {} points; using K = {}", K, points.size(), points.size()));
        K = points.size();
    }

    Partition p;
    p.K = K;
    p.centroids = seed_plus_plus(points, K, rng);
    p.assignments.assign(points.size(), K);  // sentinel: unassigned

    for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iters, 1); ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::size_t best = p.assignments[i];
            double best_d = best < K ? squared_distance(points[i], p.centroids[best])
                                     : std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < K; ++c) {
                const double dist = squared_distance(points[i], p.centroids[c]);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            if (best != p.assignments[i]) {
                p.assignments[i] = best;
                changed = true;
            }
        }
        ++p.iterations;
        if (!changed && iter > 0) {
            p.sse_trace.push_back(within_cluster_sse(points, p));
            break;
        }
        recompute_centroids(points, p);
        repair_empty_clusters(points, p);
        p.sse_trace.push_back(within_cluster_sse(points, p));
    }
    return p;
}

Partition kmeans_objective_space(const Population& population, std::size_t K, std::size_t max_iters, Rng& rng) {
    std::vector<Vector> objectives;
    objectives.reserve(population.size());
    for (const auto& s : population) objectives.push_back(s.f);
    return kmeans(objectives, K, max_iters, rng);
}

bool feasibility_first_better(const Solution& a, const Solution& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.cv < b.cv;
    return dominates(a.f, b.f);
}

std::vector<Solution> tournament_select(std::span<const Solution> subpop, std::size_t count, Rng& rng) {
    if (subpop.empty()) throw std::invalid_argument("tournament_select: empty subpopulation");
    std::vector<Solution> winners;
    winners.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        const std::size_t a = rng.index(subpop.size());
        const std::size_t b = rng.index(subpop.size());
        std::size_t winner;
        if (feasibility_first_better(subpop[a], subpop[b])) {
            winner = a;
        } else if (feasibility_first_better(subpop[b], subpop[a])) {
            winner = b;
        } else {
            winner = rng.coin() ? a : b;
        }
        winners.push_back(subpop[winner]);
    }
    return winners;
}

}  // namespace imcmoead
