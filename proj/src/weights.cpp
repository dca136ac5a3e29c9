#include "imcmoead/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/core.h>

namespace imcmoead {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // result * (n - k + i) is always divisible by i at this point.
        result = result * (n - k + i) / i;
    }
    return result;
}

namespace {

void enumerate_compositions(std::size_t m, std::size_t H, std::size_t pos, std::size_t remaining,
                            std::vector<std::size_t>& counts, std::vector<Vector>& out) {
    if (pos + 1 == m) {
        counts[pos] = remaining;
        Vector w(m);
        for (std::size_t j = 0; j < m; ++j) w[j] = static_cast<double>(counts[j]) / static_cast<double>(H);
        out.push_back(std::move(w));
        return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
        counts[pos] = c;
        enumerate_compositions(m, H, pos + 1, remaining - c, counts, out);
    }
}

}  // namespace

std::vector<Vector> das_dennis(std::size_t m, std::size_t H) {
    if (m < 2) throw ConfigError(fmt::format("das_dennis: m must be >= 2 (got {})", m));
    if (H < 1) throw ConfigError(fmt::format("das_dennis: H must be >= 1 (got {})", H));
    std::vector<Vector> out;
    out.reserve(binomial(H + m - 1, m - 1));
    std::vector<std::size_t> counts(m, 0);
    enumerate_compositions(m, H, 0, H, counts, out);
    return out;
}

SizedLattice nearest_weights_for_population_size(std::size_t m, std::size_t target) {
    if (m < 2) throw ConfigError(fmt::format("lattice: m must be >= 2 (got {})", m));
    if (target < m) throw ConfigError(fmt::format("lattice: population {} smaller than m = {}", target, m));
    std::size_t H = 1;
    while (binomial(H + m - 1, m - 1) < target) ++H;
    SizedLattice result{H, das_dennis(m, H)};
    result.weights.resize(target);
    return result;
}

std::vector<std::vector<std::size_t>> build_neighborhoods(std::span<const Vector> weights, std::size_t T) {
    const std::size_t N = weights.size();
    if (T < 1 || T > N) throw ConfigError(fmt::format("neighborhood size {} outside [1, {}]", T, N));

    std::vector<std::vector<std::size_t>> out(N);
    std::vector<double> dist(N);
    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < weights[i].size(); ++j) {
                const double diff = weights[i][j] - weights[k][j];
                s += diff * diff;
            }
            dist[k] = s;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        // Self has distance 0; make sure it leads even if a duplicate weight exists.
        auto self = std::find(order.begin(), order.end(), i);
        std::rotate(order.begin(), self, self + 1);
        out[i].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(T));
    }
    return out;
}

std::size_t default_neighborhood_size(std::size_t N) {
    const auto t = static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(N)));
    return std::min(std::max<std::size_t>(2, t), N);
}

WeightLattice make_lattice(std::size_t m, std::size_t N, std::size_t T) {
    WeightLattice lattice;
    auto sized = nearest_weights_for_population_size(m, N);
    lattice.H = sized.H;
    lattice.weights = std::move(sized.weights);
    lattice.T = T == 0 ? default_neighborhood_size(N) : T;
    lattice.neighborhoods = build_neighborhoods(lattice.weights, lattice.T);
    return lattice;
}

}  // namespace imcmoead
