#ifndef TRIQUAD_ORTHO_BASIS_HPP
#define TRIQUAD_ORTHO_BASIS_HPP

#include "triquad/domain.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>

namespace triquad {

/// Degree pair (m, n) of one Koornwinder-Dubiner function g_{m,n}.
struct MultiIndex
{
    int m = 0;
    int n = 0;

    int degree() const { return m + n; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// dim P_D = (D+1)(D+2)/2; zero for negative D.
constexpr int basis_dimension(int degree)
{
    return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2;
}

// Graded lexicographic enumeration: total degree ascending, m ascending
// within a degree. (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
// The first basis_dimension(d) entries always span P_d.
MultiIndex index_of(int k);
int rank_of(const MultiIndex& idx);

struct BasisSpec
{
    int degree = 0;
    bool normalized = true;

    int dimension() const { return basis_dimension(degree); }
};

/// Jacobi polynomial P_n^{alpha,beta}(x) by the three-term recurrence.
/// Arguments within 1e-12 outside [-1, 1] are clamped.
double jacobi(double alpha, double beta, int n, double x);

/// d/dx P_n^{alpha,beta}(x) = (n+alpha+beta+1)/2 P_{n-1}^{alpha+1,beta+1}(x).
double jacobi_derivative(double alpha, double beta, int n, double x);

/// Scale factor c with c^2 * integral(g_{m,n}^2) = 2 over the reference
/// triangle.
double kd_normalization(const MultiIndex& idx);

/// g_{m,n}(xi) = Q_m(x, y) P_n^{2m+1,0}(xi2) with x = 1 + 2 xi1 + xi2,
/// y = 1 - xi2 and Q_m(x, y) = y^m P_m^{0,0}(x / y), the Legendre factor in
/// the collapsed coordinate written in homogeneous form. Q_m is evaluated by
/// its own recurrence, so the apex xi2 = 1 needs no special treatment.
double kd_eval(const BasisSpec& spec, const MultiIndex& idx, const TrianglePoint& p);

/// (d g / d xi1, d g / d xi2).
std::array<double, 2> kd_gradient(const BasisSpec& spec, const MultiIndex& idx,
                                  const TrianglePoint& p);

/// Exact integral over the reference triangle: 2 for (0,0) (g_{0,0} = 1 in
/// both scalings), zero for every other index by orthogonality.
double kd_integral(const BasisSpec& spec, const MultiIndex& idx);

/// Basis values at a point set: values(j, k) = g_k(z_j) in the graded
/// enumeration. Gradient blocks have the same shape and are empty unless
/// requested.
struct BasisEvaluation
{
    Eigen::MatrixXd values;
    Eigen::MatrixXd d_xi1;
    Eigen::MatrixXd d_xi2;

    bool has_gradients() const { return d_xi1.size() != 0; }
};

BasisEvaluation vandermonde(const BasisSpec& spec, std::span<const TrianglePoint> points,
                            bool with_gradients = false);

} // namespace triquad

#endif // TRIQUAD_ORTHO_BASIS_HPP
