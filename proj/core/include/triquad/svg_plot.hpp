#ifndef TRIQUAD_SVG_PLOT_HPP
#define TRIQUAD_SVG_PLOT_HPP

#include "triquad/rule.hpp"

#include <string>

namespace triquad {

struct PlotStyle
{
    // Canvas is size x size pixels; the triangle's centroid sits at the centre.
    int size = 500;
    // Pixels per unit edge length of the equilateral triangle.
    double scale = 400.0;
    // Radius of a point carrying the average weight 2 / N.
    double mean_radius = 0.0; // 0 selects 0.3 * scale / (sqrt(N) + 2)
};

/// Static SVG 1.1 document: the rule mapped to the unit-edge equilateral
/// triangle, one filled circle per point with area proportional to its
/// weight (non-positive weights are drawn hollow with the same scaling of
/// |w|). Output depends only on the rule and style.
std::string plot_rule(const QuadratureRule& rule, const PlotStyle& style = {});

} // namespace triquad

#endif // TRIQUAD_SVG_PLOT_HPP
