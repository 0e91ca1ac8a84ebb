#include "triquad/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace triquad {

BarycentricPoint to_barycentric(const TrianglePoint& p)
{
    return {0.5 * (p.xi1 + 1.0), 0.5 * (p.xi2 + 1.0)};
}

TrianglePoint from_barycentric(const BarycentricPoint& b)
{
    return {2.0 * b.b1 - 1.0, 2.0 * b.b2 - 1.0};
}

std::array<double, 3> barycentric_triple(const TrianglePoint& p)
{
    return {0.5 * (p.xi1 + 1.0), 0.5 * (p.xi2 + 1.0), -0.5 * (p.xi1 + p.xi2)};
}

std::pair<double, double> to_equilateral(const TrianglePoint& p)
{
    static const double inv_sqrt3 = 1.0 / std::sqrt(3.0);

    // Weights on the lower-right corner, the apex and the lower-left corner.
    const auto [right, apex, left] = barycentric_triple(p);
    const double x = 0.5 * (right - left);
    const double y = apex * inv_sqrt3 - 0.5 * inv_sqrt3 * (left + right);
    return {x, y};
}

double monomial_integral(int a, int b)
{
    if (a < 0 || b < 0 || a + b > kMaxMonomialDegree)
        throw std::domain_error("monomial_integral: degree (" + std::to_string(a) + ", "
                                + std::to_string(b) + ") outside supported range");

    // a! b! / (a+b+2)! = 1 / ((a+b+1)(a+b+2) C(a+b, a)); the binomial is
    // exact in 64 bits for a + b <= 60 (C(60,30) ~ 1.2e17, and the running
    // product before each division stays below 2^64).
    const int n = a + b;
    const int k = std::min(a, b);
    std::uint64_t binom = 1;
    for (int i = 1; i <= k; ++i)
        binom = binom * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);

    const double denom = static_cast<double>(n + 1) * static_cast<double>(n + 2);
    return 1.0 / (denom * static_cast<double>(binom));
}

TrianglePoint TriangleSymmetry::apply(const TrianglePoint& p) const
{
    const auto t = barycentric_triple(p);
    return {2.0 * t[perm[0]] - 1.0, 2.0 * t[perm[1]] - 1.0};
}

std::array<double, 4> TriangleSymmetry::linear_part() const
{
    const TrianglePoint o = apply({0.0, 0.0});
    const TrianglePoint e1 = apply({1.0, 0.0});
    const TrianglePoint e2 = apply({0.0, 1.0});
    return {e1.xi1 - o.xi1, e2.xi1 - o.xi1, e1.xi2 - o.xi2, e2.xi2 - o.xi2};
}

const std::array<TriangleSymmetry, 6>& triangle_symmetries()
{
    static const std::array<TriangleSymmetry, 6> group{
        TriangleSymmetry{{0, 1, 2}}, TriangleSymmetry{{1, 2, 0}}, TriangleSymmetry{{2, 0, 1}},
        TriangleSymmetry{{1, 0, 2}}, TriangleSymmetry{{0, 2, 1}}, TriangleSymmetry{{2, 1, 0}}};
    return group;
}

} // namespace triquad
