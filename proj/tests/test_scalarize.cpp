#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imcmoead/rng.hpp"
#include "imcmoead/scalarize.hpp"

using namespace imcmoead;

TEST_CASE("tchebycheff examples") {
    CHECK(tchebycheff(Vector{1, 3}, Vector{0.5, 0.5}, Vector{0, 0}) == doctest::Approx(1.5));
    CHECK(tchebycheff(Vector{2, 2}, Vector{0.3, 0.7}, Vector{2, 2}) == 0.0);
    // Second term is clamped to 1e-6 * 5.
    CHECK(tchebycheff(Vector{2, 5}, Vector{1, 0}, Vector{0, 0}) == doctest::Approx(2.0));
    CHECK(tchebycheff(Vector{0, 5}, Vector{1, 0}, Vector{0, 0}) == doctest::Approx(5e-6));
}

TEST_CASE("best_weight_index examples") {
    const std::vector<Vector> w{{1, 0}, {0.5, 0.5}, {0, 1}};
    CHECK(best_weight_index(Vector{0.1, 0.9}, w, Vector{0, 0}) == 0);
    CHECK(best_weight_index(Vector{0.0, 0.0}, w, Vector{0, 0}) == 0);
    CHECK(best_weight_index(Vector{3.0, 7.0}, std::vector<Vector>{{0.2, 0.8}}, Vector{0, 0}) == 0);

    WeightLattice lattice;
    lattice.weights = w;
    ReferencePoint z{{0, 0}};
    CHECK(best_weight_index(Vector{0.9, 0.1}, ScalarizationContext{lattice, z}) == 2);
}

TEST_CASE("tchebycheff properties") {
    Rng rng(11);
    for (int trial = 0; trial < 1000; ++trial) {
        Vector f(3), z(3), lambda(3), c(3);
        double sum = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            f[j] = rng.uniform(-3, 3);
            z[j] = rng.uniform(-3, 3);
            lambda[j] = rng.uniform();
            sum += lambda[j];
            c[j] = rng.uniform(-10, 10);
        }
        for (auto& l : lambda) l /= sum;
        const double base = tchebycheff(f, lambda, z);
        CHECK(base >= 0.0);

        Vector fc(3), zc(3);
        for (std::size_t j = 0; j < 3; ++j) {
            fc[j] = f[j] + c[j];
            zc[j] = z[j] + c[j];
        }
        CHECK(tchebycheff(fc, lambda, zc) == doctest::Approx(base).epsilon(1e-9));

        // Moving f_j away from z_j never lowers the value.
        Vector farther = f;
        const std::size_t j = rng.index(3);
        farther[j] += (f[j] >= z[j] ? 1.0 : -1.0) * rng.uniform(0, 2);
        CHECK(tchebycheff(farther, lambda, z) >= base);
    }
}

TEST_CASE("best_weight_index is argmin-invariant under positive scaling") {
    Rng rng(5);
    std::vector<Vector> w;
    for (int k = 0; k < 20; ++k) {
        const double a = rng.uniform();
        w.push_back({a, 1.0 - a});
    }
    for (int trial = 0; trial < 200; ++trial) {
        Vector f{rng.uniform(0, 2), rng.uniform(0, 2)};
        const double s = rng.uniform(0.1, 10.0);
        Vector fs{f[0] * s, f[1] * s};
        // With z = 0 every TCH value scales by s.
        CHECK(best_weight_index(f, w, Vector{0, 0}) == best_weight_index(fs, w, Vector{0, 0}));
    }
}
