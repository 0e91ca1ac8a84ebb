#ifndef TRIQUAD_WEIGHTS_HPP
#define TRIQUAD_WEIGHTS_HPP

#include "triquad/domain.hpp"
#include "triquad/ortho_basis.hpp"

#include <Eigen/Dense>

#include <span>

namespace triquad {

// A configuration whose Vandermonde condition estimate exceeds this is
// treated as degenerate.
inline constexpr double kConditionLimit = 1e14;
inline constexpr double kSolveResidualLimit = 1e-10;

struct WeightSolution
{
    Eigen::VectorXd weights;
    double condition_estimate = 0.0;
    double solve_residual = 0.0;
};

/// Factored Newton-Cotes system V^T w = b for N = dim P_d points, where
/// V(j, k) = g_k(z_j) and b = (2, 0, ..., 0).
///
/// Construction throws Error(degenerate_configuration) when the point count
/// is wrong, the condition estimate exceeds kConditionLimit or the
/// back-substitution residual exceeds kSolveResidualLimit.
class NewtonCotesSystem
{
public:
    NewtonCotesSystem(const BasisSpec& spec, std::span<const TrianglePoint> points,
                      bool with_gradients = false);

    // Reuses an evaluation of the degree-d basis (gradients optional).
    NewtonCotesSystem(const BasisSpec& spec, BasisEvaluation basis);

    const WeightSolution& solution() const { return solution_; }
    const Eigen::VectorXd& weights() const { return solution_.weights; }
    const BasisEvaluation& basis() const { return basis_; }

    // x with V^T x = rhs.
    Eigen::MatrixXd solve_transposed(const Eigen::MatrixXd& rhs) const;
    // log |det V|
    double log_abs_determinant() const;
    // x with V x = rhs.
    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

    /// dw_i / d(z_j)_c in column 2j + c (c = 0 for xi1, 1 for xi2). Requires
    /// gradients in the basis evaluation.
    Eigen::MatrixXd weight_jacobian() const;

private:
    void factor(const BasisSpec& spec);

    BasisEvaluation basis_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    WeightSolution solution_;
};

/// Generalized Newton-Cotes weights: the unique w with
/// sum_j w_j g(z_j) = integral of g for every g in P_d.
WeightSolution newton_cotes_weights(const BasisSpec& spec, std::span<const TrianglePoint> points);

/// N x 2N derivative of the Newton-Cotes weights with respect to the point
/// coordinates, from V^T w = b:  dw = -V^{-T} (dV^T) w.
Eigen::MatrixXd weight_jacobian(const BasisSpec& spec, std::span<const TrianglePoint> points);

} // namespace triquad

#endif // TRIQUAD_WEIGHTS_HPP
