#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "imcmoead/core.hpp"

namespace imcmoead {

/// Das-Dennis weight vectors with their T-nearest neighborhoods.
struct WeightLattice {
    std::vector<Vector> weights;
    std::size_t H = 0;
    std::size_t T = 0;
    /// neighborhoods[i] lists T weight indices ordered by distance to
    /// weights[i]; it always starts with i.
    std::vector<std::vector<std::size_t>> neighborhoods;

    std::size_t size() const { return weights.size(); }
    std::size_t objectives() const { return weights.empty() ? 0 : weights.front().size(); }
};

/// C(n, k) in exact integer arithmetic.
std::size_t binomial(std::size_t n, std::size_t k);

/// All points of the simplex lattice with H divisions per axis, in ascending
/// lexicographic order. Produces C(H+m-1, m-1) vectors.
std::vector<Vector> das_dennis(std::size_t m, std::size_t H);

struct SizedLattice {
    std::size_t H = 0;
    std::vector<Vector> weights;
};

/// Smallest H whose lattice has at least `target` points, truncated to the
/// first `target` of them.
SizedLattice nearest_weights_for_population_size(std::size_t m, std::size_t target);

/// For each weight, the indices of the T closest weights (Euclidean),
/// distance ties broken by lower index.
std::vector<std::vector<std::size_t>> build_neighborhoods(std::span<const Vector> weights, std::size_t T);

/// max(2, round(0.1 N)) clamped to N.
std::size_t default_neighborhood_size(std::size_t N);

/// Lattice sized for N plus neighborhoods; T == 0 selects the default size.
WeightLattice make_lattice(std::size_t m, std::size_t N, std::size_t T = 0);

}  // namespace imcmoead
