#include <algorithm>
#include <limits>
#include <sstream>

#include <fmt/core.h>

#include "imcmoead/harness.hpp"

namespace imcmoead {

namespace {

constexpr double kPanel = 360.0;
constexpr double kMargin = 48.0;
constexpr std::size_t kMaxReferenceMarks = 400;
constexpr std::size_t kColumns = 3;

struct Axis {
    double lo = 0.0;
    double hi = 1.0;

    void widen() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

Axis axis_for(std::size_t j, const std::vector<Vector>& a, const std::vector<Vector>& b) {
    Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto* set : {&a, &b}) {
        for (const auto& p : *set) {
            ax.lo = std::min(ax.lo, p[j]);
            ax.hi = std::max(ax.hi, p[j]);
        }
    }
    if (ax.lo > ax.hi) ax = {0.0, 1.0};
    ax.widen();
    return ax;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<Vector> thin(const std::vector<Vector>& pts, std::size_t limit) {
    if (pts.size() <= limit) return pts;
    std::vector<Vector> out;
    out.reserve(limit);
    for (std::size_t k = 0; k < limit; ++k) out.push_back(pts[k * (pts.size() - 1) / (limit - 1)]);
    return out;
}

void panel(std::ostringstream& svg, double ox, double oy, std::size_t fx, std::size_t fy,
           const std::vector<Vector>& front, const std::vector<Vector>& reference) {
    const Axis ax = axis_for(fx, front, reference);
    const Axis ay = axis_for(fy, front, reference);
    const double inner = kPanel - 2.0 * kMargin;
    auto px = [&](double v) { return ox + kMargin + (v - ax.lo) / (ax.hi - ax.lo) * inner; };
    auto py = [&](double v) { return oy + kPanel - kMargin - (v - ay.lo) / (ay.hi - ay.lo) * inner; };

    svg << fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="#444"/>)",
                       ox + kMargin, oy + kMargin, inner, inner)
        << '\n';
    svg << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle">f{}</text>)",
                       ox + kPanel / 2.0, oy + kPanel - 12.0, fx + 1)
        << '\n';
    svg << fmt::format(
               R"svg(<text x="{:.2f}" y="{:.2f}" font-size="12" text-anchor="middle" transform="rotate(-90 {:.2f} {:.2f})">f{}</text>)svg",
               ox + 16.0, oy + kPanel / 2.0, ox + 16.0, oy + kPanel / 2.0, fy + 1)
        << '\n';
    // Axis extents at the corners.
    svg << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9">{:.3g}</text>)", ox + kMargin,
                       oy + kPanel - kMargin + 12.0, ax.lo)
        << '\n';
    svg << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="end">{:.3g}</text>)",
                       ox + kPanel - kMargin, oy + kPanel - kMargin + 12.0, ax.hi)
        << '\n';
    svg << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="end">{:.3g}</text>)",
                       ox + kMargin - 3.0, oy + kPanel - kMargin, ay.lo)
        << '\n';
    svg << fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="9" text-anchor="end">{:.3g}</text>)",
                       ox + kMargin - 3.0, oy + kMargin + 8.0, ay.hi)
        << '\n';

    for (const auto& p : thin(reference, kMaxReferenceMarks))
        svg << fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="1.2" fill="#9a9a9a"/>)", px(p[fx]), py(p[fy])) << '\n';
    for (const auto& p : front)
        svg << fmt::format(R"(<circle class="front" cx="{:.2f}" cy="{:.2f}" r="3" fill="#c0392b" fill-opacity="0.8"/>)",
                           px(p[fx]), py(p[fy]))
            << '\n';
}

}  // namespace

std::string emit_front_plot(const RunRecord& record, const std::vector<Vector>& reference) {
    std::size_t m = 2;
    if (!record.front.empty()) m = record.front.front().size();
    else if (!reference.empty()) m = reference.front().size();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
    if (pairs.empty()) pairs.emplace_back(0, 1);

    const std::size_t cols = std::min(pairs.size(), kColumns);
    const std::size_t rows = (pairs.size() + cols - 1) / cols;
    const double header = 28.0;
    const double width = static_cast<double>(cols) * kPanel;
    const double height = header + static_cast<double>(rows) * kPanel;

    std::ostringstream svg;
    svg << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)",
                       width, height, width, height)
        << '\n';
    svg << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
    svg << fmt::format(R"(<text x="{:.2f}" y="18" font-size="14" text-anchor="middle">{} / {} (seed {}, HV {})</text>)",
                       width / 2.0, xml_escape(record.problem), xml_escape(record.config_id), record.seed, format_sci(record.hv.value, 4))
        << '\n';
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double ox = static_cast<double>(k % cols) * kPanel;
        const double oy = header + static_cast<double>(k / cols) * kPanel;
        panel(svg, ox, oy, pairs[k].first, pairs[k].second, record.front, reference);
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace imcmoead
