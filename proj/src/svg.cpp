#include "treechain/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace treechain {

namespace {

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

} // namespace

std::string render_svg(const CoverSystem& s, const RealizedSystem& r, const std::optional<EnlargedFamily>& enlarged,
                       const SvgOptions& options)
{
    const auto& top = s.top();
    double x0 = to_double(top.coord(0).x), x1 = x0, y0 = to_double(top.coord(0).y), y1 = y0;
    for (int i = 0; i < top.size(); ++i) {
        double x = to_double(top.coord(i).x), y = to_double(top.coord(i).y);
        x0 = std::min(x0, x), x1 = std::max(x1, x);
        y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    const double k = options.scale;
    const double margin = 40.0;
    const double legend = 160.0;
    const double width = (x1 - x0) * k + 2 * margin + legend;
    const double height = (y1 - y0) * k + 2 * margin;
    // Flip y so larger levels sit higher in the picture.
    auto px = [&](const Rational& x) { return num((to_double(x) - x0) * k + margin); };
    auto py = [&](const Rational& y) { return num((y1 - to_double(y)) * k + margin); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (int n : options.levels) {
        if (n < 0 || n > s.length()) throw std::invalid_argument("no cover at level " + std::to_string(n));
        const char* colour = palette[n % std::size(palette)];
        out << "<g class=\"cover level-" << n + 1 << "\" fill=\"none\" stroke=\"" << colour
            << "\" stroke-opacity=\"0.35\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
        for (std::size_t v = 0; v < s.cover(n).size(); ++v) {
            int index = r.index(n, static_cast<int>(v));
            double radius = options.fallback_radius / (1 << std::min(n, 20));
            if (enlarged) radius = std::sqrt(to_double(enlarged->sets.at(index).radius2));
            out << "<g class=\"link level-" << n + 1 << "\"><path stroke-width=\"" << num(2 * radius * k) << "\" d=\"";
            bool first = true;
            for (const auto& seg : r.regions[index].closed_segments()) {
                out << (first ? "" : " ") << "M" << px(seg.a.x) << " " << py(seg.a.y) << " L" << px(seg.b.x) << " " << py(seg.b.y);
                first = false;
            }
            out << "\"/></g>\n";
        }
        out << "</g>\n";
    }

    out << "<g class=\"skeleton\" stroke=\"black\" stroke-width=\"1\">\n";
    for (auto [a, b] : top.edges())
        out << "<line x1=\"" << px(top.coord(a).x) << "\" y1=\"" << py(top.coord(a).y) << "\" x2=\"" << px(top.coord(b).x) << "\" y2=\""
            << py(top.coord(b).y) << "\"/>\n";
    out << "</g>\n<g class=\"vertices\" fill=\"black\">\n";
    for (int i = 0; i < top.size(); ++i)
        out << "<circle cx=\"" << px(top.coord(i).x) << "\" cy=\"" << py(top.coord(i).y) << "\" r=\"1.5\"/>\n";
    out << "</g>\n";

    const double lx = width - legend + 10;
    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<text x=\"" << num(lx) << "\" y=\"" << num(margin) << "\">T_" << s.length() << " (" << top.size() << " vertices)</text>\n";
    double y = margin + 20;
    for (int n : options.levels) {
        const char* colour = palette[n % std::size(palette)];
        out << "<rect x=\"" << num(lx) << "\" y=\"" << num(y - 10) << "\" width=\"12\" height=\"12\" fill=\"" << colour << "\"/>";
        out << "<text x=\"" << num(lx + 18) << "\" y=\"" << num(y) << "\">cover " << n + 1 << ": " << s.cover(n).size() << " links</text>\n";
        y += 18;
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace treechain
