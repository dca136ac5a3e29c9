#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "imcmoead/core.hpp"
#include "imcmoead/rng.hpp"

namespace imcmoead {

enum class HVMethod { Exact, MonteCarlo };

struct HVResult {
    double value = 0.0;
    HVMethod method = HVMethod::Exact;
    std::size_t samples = 0;    ///< Monte Carlo draws, 0 for exact
    double std_error = 0.0;     ///< Monte Carlo standard error, 0 for exact
    Vector ref;
};

std::string to_string(HVMethod method);

/// Exact hypervolume for 2 or 3 objectives. Points not componentwise <= ref
/// are discarded first. Throws std::invalid_argument for other dimensions.
double hypervolume_exact(std::span<const Vector> points, std::span<const double> ref);

/// Monte Carlo estimate over the box [ideal(points), ref]. Sampling is split
/// into a fixed number of shards with seeds drawn from `rng`, so the result
/// does not depend on how many threads run the shards.
HVResult hypervolume_mc(std::span<const Vector> points, std::span<const double> ref, std::size_t samples, Rng& rng);

/// Exact for m <= 3, Monte Carlo otherwise.
HVResult hypervolume(std::span<const Vector> points, std::span<const double> ref, std::size_t mc_samples, Rng& rng);

enum class Verdict { Better, Worse, Equivalent };

/// '+', '-' or '≈'.
std::string to_symbol(Verdict verdict);

struct RankSumResult {
    double p_value = 1.0;
    Verdict verdict = Verdict::Equivalent;
};

/// Two-sided Wilcoxon rank-sum test with average ranks for ties. Exact
/// permutation distribution when |a| + |b| <= 12, otherwise the normal
/// approximation with tie and continuity correction. The verdict is Better
/// when p < alpha and median(a) > median(b) (larger is better).
/// Throws std::invalid_argument when either sample has fewer than 3 values.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

double median(std::span<const double> values);

}  // namespace imcmoead
