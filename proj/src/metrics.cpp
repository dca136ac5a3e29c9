#include "imcmoead/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace imcmoead {

std::string to_string(HVMethod method) { return method == HVMethod::Exact ? "exact" : "monte-carlo"; }

namespace {

std::vector<Vector> inside_reference(std::span<const Vector> points, std::span<const double> ref) {
    std::vector<Vector> kept;
    for (const auto& p : points) {
        bool inside = p.size() == ref.size();
        for (std::size_t j = 0; inside && j < ref.size(); ++j) inside = p[j] <= ref[j];
        if (inside) kept.push_back(p);
    }
    return kept;
}

double hv2d(std::vector<Vector> pts, std::span<const double> ref) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double level = ref[1];
    for (const auto& p : pts) {
        if (p[1] < level) {
            area += (ref[0] - p[0]) * (level - p[1]);
            level = p[1];
        }
    }
    return area;
}

// Nondominated 2D staircase (x ascending, y descending) with its dominated
// area maintained under insertion.
class Staircase {
public:
    Staircase(double ref_x, double ref_y) : ref_x_(ref_x), ref_y_(ref_y) {}

    void insert(double x, double y) {
        auto it = steps_.lower_bound(x);
        if (it != steps_.end() && it->first == x && it->second <= y) return;
        double level = ref_y_;
        if (it != steps_.begin()) {
            const auto pred = std::prev(it);
            if (pred->second <= y) return;
            level = pred->second;
        }
        double cursor = x;
        while (it != steps_.end() && it->second >= y) {
            area_ += (it->first - cursor) * (level - y);
            level = it->second;
            cursor = it->first;
            it = steps_.erase(it);
        }
        const double next_x = it != steps_.end() ? it->first : ref_x_;
        area_ += (next_x - cursor) * (level - y);
        steps_.emplace(x, y);
    }

    double area() const { return area_; }

private:
    double ref_x_;
    double ref_y_;
    double area_ = 0.0;
    std::map<double, double> steps_;
};

double hv3d(std::vector<Vector> pts, std::span<const double> ref) {
    std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) { return a[2] < b[2]; });
    Staircase stairs(ref[0], ref[1]);
    double volume = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        stairs.insert(pts[i][0], pts[i][1]);
        const double next_z = i + 1 < pts.size() ? pts[i + 1][2] : ref[2];
        volume += stairs.area() * (next_z - pts[i][2]);
    }
    return volume;
}

// Counts uniform draws from the box [lo, hi] dominated by at least one point.
std::size_t count_dominated(const std::vector<Vector>& pts, const Vector& lo, const Vector& hi, std::size_t draws,
                            std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t m = lo.size();
    std::size_t hits = 0;
    Vector s(m);

    if (m == 2) {
        // Prefix minima of f2 over points sorted by f1 answer each query with
        // one binary search.
        std::vector<Vector> sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> xs(sorted.size());
        std::vector<double> best_y(sorted.size());
        double run = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            xs[i] = sorted[i][0];
            run = std::min(run, sorted[i][1]);
            best_y[i] = run;
        }
        for (std::size_t k = 0; k < draws; ++k) {
            const double x = rng.uniform(lo[0], hi[0]);
            const double y = rng.uniform(lo[1], hi[1]);
            const auto pos = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
            if (pos > 0 && best_y[static_cast<std::size_t>(pos - 1)] <= y) ++hits;
        }
        return hits;
    }

    for (std::size_t k = 0; k < draws; ++k) {
        for (std::size_t j = 0; j < m; ++j) s[j] = rng.uniform(lo[j], hi[j]);
        for (const auto& p : pts) {
            bool dom = true;
            for (std::size_t j = 0; dom && j < m; ++j) dom = p[j] <= s[j];
            if (dom) {
                ++hits;
                break;
            }
        }
    }
    return hits;
}

constexpr std::size_t kMonteCarloShards = 16;

}  // namespace

double hypervolume_exact(std::span<const Vector> points, std::span<const double> ref) {
    if (ref.size() != 2 && ref.size() != 3)
        throw std::invalid_argument(fmt::format("exact hypervolume supports 2 or 3 objectives, got {}", ref.size()));
    auto pts = inside_reference(points, ref);
    if (pts.empty()) return 0.0;
    return ref.size() == 2 ? hv2d(std::move(pts), ref) : hv3d(std::move(pts), ref);
}

HVResult hypervolume_mc(std::span<const Vector> points, std::span<const double> ref, std::size_t samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("hypervolume_mc: samples must be >= 1");
    HVResult result;
    result.method = HVMethod::MonteCarlo;
    result.samples = samples;
    result.ref.assign(ref.begin(), ref.end());

    std::vector<std::uint64_t> seeds(kMonteCarloShards);
    for (auto& s : seeds) s = rng();

    const auto pts = inside_reference(points, ref);
    if (pts.empty()) return result;

    Vector lo(ref.size(), std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
        for (std::size_t j = 0; j < ref.size(); ++j) lo[j] = std::min(lo[j], p[j]);
    const Vector hi(ref.begin(), ref.end());
    double box = 1.0;
    for (std::size_t j = 0; j < ref.size(); ++j) box *= hi[j] - lo[j];
    if (box <= 0.0) return result;

    std::vector<std::future<std::size_t>> shards;
    for (std::size_t k = 0; k < kMonteCarloShards; ++k) {
        const std::size_t draws = samples / kMonteCarloShards + (k < samples % kMonteCarloShards ? 1 : 0);
        shards.push_back(std::async(std::launch::async, count_dominated, std::cref(pts), std::cref(lo), std::cref(hi),
                                    draws, seeds[k]));
    }
    std::size_t hits = 0;
    for (auto& f : shards) hits += f.get();

    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    result.value = box * p;
    result.std_error = box * std::sqrt(p * (1.0 - p) / n);
    return result;
}

HVResult hypervolume(std::span<const Vector> points, std::span<const double> ref, std::size_t mc_samples, Rng& rng) {
    if (ref.size() <= 3) {
        HVResult r;
        r.value = hypervolume_exact(points, ref);
        r.ref.assign(ref.begin(), ref.end());
        return r;
    }
    return hypervolume_mc(points, ref, mc_samples, rng);
}

std::string to_symbol(Verdict verdict) {
    switch (verdict) {
        case Verdict::Better: return "+";
        case Verdict::Worse: return "-";
        case Verdict::Equivalent: return "≈";
    }
    return "?";
}

double median(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.size() < 3 || b.size() < 3) throw std::invalid_argument("wilcoxon_rank_sum: each sample needs >= 3 values");

    const std::size_t n1 = a.size();
    const std::size_t n = a.size() + b.size();
    std::vector<std::pair<double, std::size_t>> pooled;
    pooled.reserve(n);
    for (std::size_t i = 0; i < n1; ++i) pooled.emplace_back(a[i], i);
    for (std::size_t i = 0; i < b.size(); ++i) pooled.emplace_back(b[i], n1 + i);
    std::sort(pooled.begin(), pooled.end());

    std::vector<double> rank(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && pooled[j].first == pooled[i].first) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) rank[pooled[k].second] = avg;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    const double w = std::accumulate(rank.begin(), rank.begin() + static_cast<std::ptrdiff_t>(n1), 0.0);
    const double expected = static_cast<double>(n1) * static_cast<double>(n + 1) / 2.0;
    const double observed = std::abs(w - expected);

    RankSumResult result;
    if (n <= 12) {
        // Enumerate every way of drawing n1 ranks out of n.
        std::size_t extreme = 0;
        std::size_t total = 0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != n1) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (mask & (1u << k)) s += rank[k];
            ++total;
            if (std::abs(s - expected) >= observed - 1e-9) ++extreme;
        }
        result.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    } else {
        const double nn = static_cast<double>(n);
        const double variance = static_cast<double>(n1) * static_cast<double>(b.size()) / 12.0 *
                                ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
        if (variance <= 0.0) {
            result.p_value = 1.0;
        } else {
            const double z = std::max(observed - 0.5, 0.0) / std::sqrt(variance);
            result.p_value = std::erfc(z / std::sqrt(2.0));
        }
    }
    result.p_value = std::clamp(result.p_value, std::numeric_limits<double>::min(), 1.0);

    if (result.p_value >= alpha) {
        result.verdict = Verdict::Equivalent;
    } else {
        result.verdict = median(a) > median(b) ? Verdict::Better : Verdict::Worse;
    }
    return result;
}

}  // namespace imcmoead
