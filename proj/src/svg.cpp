#include "locsom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "locsom/error.hpp"

namespace locsom::svg {
namespace {

constexpr double kSize = 640.0;
constexpr double kMargin = 56.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // Degenerate ranges get a unit-width window around the value.
    void settle() {
        if (!(hi > lo)) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    double map(double v, double out_lo, double out_hi) const {
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

void open_doc(std::ostringstream& out, const std::string& title) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
        << "<title>" << escape(title) << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kSize / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">" << escape(title) << "</text>\n";
}

}  // namespace

std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string mesh(std::span<const double> weights, const LatticeGraph& graph, const std::string& title) {
    if (weights.size() != graph.size() * 2) throw InvalidInput("mesh plot needs 2D weights for every unit");
    Range xr, yr;
    for (std::size_t j = 0; j < graph.size(); ++j) {
        xr.add(weights[2 * j]);
        yr.add(weights[2 * j + 1]);
    }
    xr.settle();
    yr.settle();
    // Same scale on both axes so the mesh is not distorted.
    const double span = std::max(xr.hi - xr.lo, yr.hi - yr.lo);
    const double cx = (xr.lo + xr.hi) / 2, cy = (yr.lo + yr.hi) / 2;
    const Range xs{cx - span / 2, cx + span / 2}, ys{cy - span / 2, cy + span / 2};
    auto px = [&](std::size_t j) { return xs.map(weights[2 * j], kMargin, kSize - kMargin); };
    auto py = [&](std::size_t j) { return ys.map(weights[2 * j + 1], kSize - kMargin, kMargin); };

    std::ostringstream out;
    open_doc(out, title);
    out << "<g stroke=\"#4a6fa5\" stroke-width=\"1\">\n";
    for (const auto& [a, b] : graph.edges()) {
        out << "<line x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\"" << num(px(b)) << "\" y2=\""
            << num(py(b)) << "\"/>\n";
    }
    out << "</g>\n<g fill=\"#c0392b\">\n";
    for (std::size_t j = 0; j < graph.size(); ++j) {
        out << "<circle cx=\"" << num(px(j)) << "\" cy=\"" << num(py(j)) << "\" r=\"2.5\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string scatter(std::span<const ScatterPoint> points, bool log_x, const std::string& x_label,
                    const std::string& y_label, const std::string& title) {
    std::vector<ScatterPoint> pts;
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
        if (log_x && p.x <= 0.0) continue;
        pts.push_back({log_x ? std::log10(p.x) : p.x, p.y});
    }
    if (pts.empty()) throw InvalidInput("nothing to plot");

    Range xr, yr;
    for (const auto& p : pts) {
        xr.add(p.x);
        yr.add(p.y);
    }
    yr.add(0.0);
    xr.settle();
    yr.settle();
    auto px = [&](double x) { return xr.map(x, kMargin, kSize - kMargin); };
    auto py = [&](double y) { return yr.map(y, kSize - kMargin, kMargin); };

    std::ostringstream out;
    open_doc(out, title);
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kSize - kMargin << "\" x2=\"" << kSize - kMargin << "\" y2=\""
        << kSize - kMargin << "\"/>\n"
        << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kSize - kMargin
        << "\"/>\n</g>\n";

    out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        char xl[32], yl[32];
        std::snprintf(xl, sizeof xl, "%.3g", log_x ? std::pow(10.0, xv) : xv);
        std::snprintf(yl, sizeof yl, "%.3g", yv);
        out << "<text x=\"" << num(px(xv)) << "\" y=\"" << kSize - kMargin + 16 << "\" text-anchor=\"middle\">"
            << escape(xl) << "</text>\n"
            << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << escape(yl)
            << "</text>\n";
    }
    out << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - 14 << "\" text-anchor=\"middle\">"
        << escape(x_label + (log_x ? " (log scale)" : "")) << "</text>\n"
        << "<text x=\"16\" y=\"" << kSize / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kSize / 2
        << ")\">" << escape(y_label) << "</text>\n</g>\n";

    out << "<g fill=\"#2c7fb8\" fill-opacity=\"0.6\">\n";
    for (const auto& p : pts) {
        out << "<circle class=\"marker\" cx=\"" << num(px(p.x)) << "\" cy=\"" << num(py(p.y)) << "\" r=\"3\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace locsom::svg
