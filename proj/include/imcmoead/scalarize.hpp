#pragma once

#include <cstddef>
#include <span>

#include "imcmoead/core.hpp"
#include "imcmoead/weights.hpp"

namespace imcmoead {

/// Floor applied to weight components inside the Tchebycheff function only.
inline constexpr double kWeightFloor = 1e-6;

/// Weighted Tchebycheff distance max_j max(lambda_j, 1e-6) * |f_j - z_j|.
double tchebycheff(std::span<const double> f, std::span<const double> lambda, std::span<const double> z);

struct ScalarizationContext {
    const WeightLattice& lattice;
    const ReferencePoint& z;
};

/// argmin_k tchebycheff(f, lambda_k, z) over all weights; lowest index wins ties.
std::size_t best_weight_index(std::span<const double> f, std::span<const Vector> weights, std::span<const double> z);
std::size_t best_weight_index(std::span<const double> f, const ScalarizationContext& ctx);

}  // namespace imcmoead
