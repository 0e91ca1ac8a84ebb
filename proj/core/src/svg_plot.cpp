#include "triquad/svg_plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace triquad {

namespace {

std::string fixed3(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    // Avoid "-0.000".
    if (std::string(buf) == "-0.000")
        return "0.000";
    return buf;
}

} // namespace

std::string plot_rule(const QuadratureRule& rule, const PlotStyle& style)
{
    const double half = 0.5 * style.size;
    const double n = static_cast<double>(std::max<std::size_t>(rule.size(), 1));
    const double mean_r =
        style.mean_radius > 0.0 ? style.mean_radius : 0.3 * style.scale / (std::sqrt(n) + 2.0);
    const double mean_w = 2.0 / n;

    auto px = [&](double x) { return half + style.scale * x; };
    auto py = [&](double y) { return half - style.scale * y; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << style.size
       << "\" height=\"" << style.size << "\" viewBox=\"0 0 " << style.size << ' ' << style.size
       << "\">\n";
    os << "  <title>" << rule.size() << "-point rule";
    if (rule.certified_strength)
        os << ", strength " << *rule.certified_strength;
    os << "</title>\n";

    os << "  <polygon points=\"";
    for (std::size_t v = 0; v < kVertices.size(); ++v)
    {
        const auto [x, y] = to_equilateral(kVertices[v]);
        os << (v ? " " : "") << fixed3(px(x)) << ',' << fixed3(py(y));
    }
    os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        const auto [x, y] = to_equilateral(rule.points[i]);
        const double w = i < rule.weights.size() ? rule.weights[i] : 0.0;
        const double r = mean_r * std::sqrt(std::abs(w) / mean_w);
        os << "  <circle cx=\"" << fixed3(px(x)) << "\" cy=\"" << fixed3(py(y)) << "\" r=\""
           << fixed3(r) << '"';
        if (w > 0.0)
            os << " fill=\"black\"";
        else
            os << " fill=\"none\" stroke=\"red\"";
        os << "/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace triquad
