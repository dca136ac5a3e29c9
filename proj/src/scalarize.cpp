#include "imcmoead/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace imcmoead {

double tchebycheff(std::span<const double> f, std::span<const double> lambda, std::span<const double> z) {
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        worst = std::max(worst, std::max(lambda[j], kWeightFloor) * std::abs(f[j] - z[j]));
    }
    return worst;
}

std::size_t best_weight_index(std::span<const double> f, std::span<const Vector> weights, std::span<const double> z) {
    if (weights.empty()) throw std::invalid_argument("best_weight_index: empty lattice");
    std::size_t best = 0;
    double best_value = tchebycheff(f, weights[0], z);
    for (std::size_t k = 1; k < weights.size(); ++k) {
        const double v = tchebycheff(f, weights[k], z);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

std::size_t best_weight_index(std::span<const double> f, const ScalarizationContext& ctx) {
    return best_weight_index(f, ctx.lattice.weights, ctx.z.z);
}

}  // namespace imcmoead
