#ifndef TRIQUAD_DOMAIN_HPP
#define TRIQUAD_DOMAIN_HPP

#include <array>
#include <utility>

namespace triquad {

// Geometric tolerance for interior-or-boundary tests, in reference coordinates.
inline constexpr double kInteriorTolerance = 1e-12;

// Highest total degree accepted by monomial_integral.
inline constexpr int kMaxMonomialDegree = 60;

/// A point in the reference triangle xi1 >= -1, xi2 >= -1, xi1 + xi2 <= 0
/// (vertices (-1,-1), (1,-1), (-1,1); area 2).
struct TrianglePoint
{
    double xi1 = 0.0;
    double xi2 = 0.0;

    bool is_inside(double tol = kInteriorTolerance) const
    {
        return xi1 >= -1.0 - tol && xi2 >= -1.0 - tol && xi1 + xi2 <= tol;
    }

    friend bool operator==(const TrianglePoint&, const TrianglePoint&) = default;
};

/// Barycentric coordinates with respect to the vertices (-1,-1), (1,-1),
/// (-1,1). Equivalently (b1, b2) are the (x, y) coordinates in the unit
/// right triangle. The third coordinate is always derived.
struct BarycentricPoint
{
    double b1 = 0.0;
    double b2 = 0.0;

    double b3() const { return 1.0 - b1 - b2; }

    bool is_inside(double tol = kInteriorTolerance) const
    {
        return b1 >= -tol && b2 >= -tol && b3() >= -tol;
    }
};

inline constexpr TrianglePoint kCentroid{-1.0 / 3.0, -1.0 / 3.0};

inline constexpr std::array<TrianglePoint, 3> kVertices{
    TrianglePoint{-1.0, -1.0}, TrianglePoint{1.0, -1.0}, TrianglePoint{-1.0, 1.0}};

BarycentricPoint to_barycentric(const TrianglePoint& p);
TrianglePoint from_barycentric(const BarycentricPoint& b);

// All three barycentric coordinates, computed directly from the reference
// coordinates so that b3 carries no cancellation from b1 + b2.
std::array<double, 3> barycentric_triple(const TrianglePoint& p);

/// Affine image on the unit-edge equilateral triangle centred at the origin.
/// Vertex (-1,-1) goes to the lower left corner, (1,-1) to the lower right
/// and (-1,1) to the apex.
std::pair<double, double> to_equilateral(const TrianglePoint& p);

/// Exact integral of x^a y^b over the unit right triangle x, y >= 0,
/// x + y <= 1, i.e. a! b! / (a+b+2)!. Throws std::domain_error when a or b
/// is negative or a + b exceeds kMaxMonomialDegree.
double monomial_integral(int a, int b);

/// One of the six symmetries of the triangle, acting on barycentric
/// coordinates as a permutation: image coordinate i is source coordinate
/// perm[i].
struct TriangleSymmetry
{
    std::array<int, 3> perm{0, 1, 2};

    TrianglePoint apply(const TrianglePoint& p) const;
    // Linear part of the affine map in reference coordinates, row-major.
    std::array<double, 4> linear_part() const;
};

// Identity first, then the two rotations, then the three reflections.
const std::array<TriangleSymmetry, 6>& triangle_symmetries();

} // namespace triquad

#endif // TRIQUAD_DOMAIN_HPP
