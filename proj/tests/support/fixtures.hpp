#ifndef TRIQUAD_TESTS_FIXTURES_HPP
#define TRIQUAD_TESTS_FIXTURES_HPP

#include "triquad/domain.hpp"
#include "triquad/rule.hpp"

#include <random>
#include <tuple>
#include <vector>

namespace triquad::fixtures {

// Edge midpoints of the reference triangle.
inline std::vector<TrianglePoint> midpoints()
{
    return {{0.0, -1.0}, {0.0, 0.0}, {-1.0, 0.0}};
}

inline QuadratureRule midpoint_rule()
{
    QuadratureRule r;
    r.cardinal_degree = 1;
    r.points = midpoints();
    r.weights = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    return r;
}

inline QuadratureRule centroid_rule()
{
    QuadratureRule r;
    r.cardinal_degree = 0;
    r.points = {kCentroid};
    r.weights = {2.0};
    return r;
}

// The classical 6-point strength-4 rule (two orbits of three), published with
// weights summing to 1; stored here in reference coordinates.
inline QuadratureRule strength_four_six_point()
{
    const double a = 0.816847572980459, b = 0.091576213509771, wa = 0.109951743655322;
    const double c = 0.108103018168070, e = 0.445948490915965, wc = 0.223381589678011;
    QuadratureRule r;
    r.cardinal_degree = 2;
    for (const auto& [b1, b2, w] : {std::tuple{a, b, wa}, std::tuple{b, a, wa},
                                    std::tuple{b, b, wa}, std::tuple{c, e, wc},
                                    std::tuple{e, c, wc}, std::tuple{e, e, wc}})
    {
        r.points.push_back(from_barycentric({b1, b2}));
        r.weights.push_back(2.0 * w);
    }
    return r;
}

// Uniform points strictly inside the triangle.
inline std::vector<TrianglePoint> random_points(int n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TrianglePoint> pts;
    while (static_cast<int>(pts.size()) < n)
    {
        double x = u(rng), y = u(rng);
        if (x + y >= 1.0)
        {
            x = 1.0 - x;
            y = 1.0 - y;
        }
        if (x > 1e-3 && y > 1e-3 && x + y < 1.0 - 1e-3)
            pts.push_back(from_barycentric({x, y}));
    }
    return pts;
}

} // namespace triquad::fixtures

#endif // TRIQUAD_TESTS_FIXTURES_HPP
