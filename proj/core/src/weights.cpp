#include "triquad/weights.hpp"

#include "triquad/error.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace triquad {

namespace {

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

} // namespace

NewtonCotesSystem::NewtonCotesSystem(const BasisSpec& spec, std::span<const TrianglePoint> points,
                                     bool with_gradients)
{
    if (static_cast<int>(points.size()) != spec.dimension())
        throw Error(ErrorKind::degenerate_configuration,
                    "Newton-Cotes system needs " + std::to_string(spec.dimension())
                        + " points for degree " + std::to_string(spec.degree) + ", got "
                        + std::to_string(points.size()));
    basis_ = vandermonde(spec, points, with_gradients);
    factor(spec);
}

NewtonCotesSystem::NewtonCotesSystem(const BasisSpec& spec, BasisEvaluation basis)
    : basis_(std::move(basis))
{
    if (basis_.values.rows() != spec.dimension() || basis_.values.cols() != spec.dimension())
        throw Error(ErrorKind::degenerate_configuration,
                    "Newton-Cotes system needs a square basis evaluation of dimension "
                        + std::to_string(spec.dimension()));
    factor(spec);
}

void NewtonCotesSystem::factor(const BasisSpec& spec)
{
    const Eigen::Index n = spec.dimension();
    const Eigen::MatrixXd vt = basis_.values.transpose();
    lu_.compute(vt);

    const double rcond = lu_.rcond();
    solution_.condition_estimate = rcond > 0.0 ? 1.0 / rcond : INFINITY;
    if (!(solution_.condition_estimate <= kConditionLimit))
        throw Error(ErrorKind::degenerate_configuration,
                    "degenerate configuration: condition estimate "
                        + sci(solution_.condition_estimate) + " exceeds " + sci(kConditionLimit));

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 2.0;
    solution_.weights = lu_.solve(rhs);
    solution_.solve_residual = (vt * solution_.weights - rhs).lpNorm<Eigen::Infinity>();
    if (!(solution_.solve_residual <= kSolveResidualLimit))
        throw Error(ErrorKind::degenerate_configuration,
                    "degenerate configuration: solve residual " + sci(solution_.solve_residual)
                        + " exceeds " + sci(kSolveResidualLimit));
}

Eigen::MatrixXd NewtonCotesSystem::solve_transposed(const Eigen::MatrixXd& rhs) const
{
    return lu_.solve(rhs);
}

double NewtonCotesSystem::log_abs_determinant() const
{
    return lu_.matrixLU().diagonal().cwiseAbs().array().log().sum();
}

Eigen::MatrixXd NewtonCotesSystem::solve(const Eigen::MatrixXd& rhs) const
{
    return lu_.transpose().solve(rhs);
}

Eigen::MatrixXd NewtonCotesSystem::weight_jacobian() const
{
    if (!basis_.has_gradients())
        throw Error(ErrorKind::invalid_argument, "weight_jacobian needs basis gradients");

    const Eigen::Index n = basis_.values.rows();
    const Eigen::VectorXd& w = solution_.weights;
    Eigen::MatrixXd rhs(n, 2 * n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        rhs.col(2 * j) = w(j) * basis_.d_xi1.row(j).transpose();
        rhs.col(2 * j + 1) = w(j) * basis_.d_xi2.row(j).transpose();
    }
    return -solve_transposed(rhs);
}

WeightSolution newton_cotes_weights(const BasisSpec& spec, std::span<const TrianglePoint> points)
{
    return NewtonCotesSystem(spec, points).solution();
}

Eigen::MatrixXd weight_jacobian(const BasisSpec& spec, std::span<const TrianglePoint> points)
{
    return NewtonCotesSystem(spec, points, true).weight_jacobian();
}

} // namespace triquad
