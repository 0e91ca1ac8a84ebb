#ifndef TRIQUAD_OPTIMIZER_HPP
#define TRIQUAD_OPTIMIZER_HPP

#include "triquad/domain.hpp"
#include "triquad/ortho_basis.hpp"
#include "triquad/rule.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace triquad {

/// Residual of the Newton-Cotes rule on the points against the degree shell
/// d < m+n <= d+e: entry k is sum_j w_j g_k(z_j) - integral(g_k), with k
/// running over the shell in graded order. Length dim P_{d+e} - dim P_d.
Eigen::VectorXd residual(const BasisSpec& spec_d, const BasisSpec& spec_de,
                         std::span<const TrianglePoint> points);

/// Derivative of `residual` with respect to the point coordinates, column
/// 2j + c for coordinate c of point j.
Eigen::MatrixXd residual_jacobian(const BasisSpec& spec_d, const BasisSpec& spec_de,
                                  std::span<const TrianglePoint> points);

/// Residual, Jacobian and Newton-Cotes weights from one basis evaluation.
struct ResidualModel
{
    Eigen::VectorXd weights;
    Eigen::VectorXd residual;
    Eigen::MatrixXd jacobian;
    // dw_i / d(z_j)_c, filled alongside the residual Jacobian.
    Eigen::MatrixXd weight_jacobian;
    double condition_estimate = 0.0;
    // log |det V| of the degree-d Vandermonde matrix and its gradient in the
    // point coordinates (gradient only with the Jacobian).
    double log_volume = 0.0;
    Eigen::VectorXd log_volume_gradient;

    // Throws Error(degenerate_configuration).
    static ResidualModel evaluate(int d, int e, std::span<const TrianglePoint> points,
                                  bool with_jacobian = true);
};

struct OptimizerConfig
{
    int target_e = 1;
    // Per restart, shared across all barrier stages.
    int max_iterations = 2000;
    // Iteration stops once the max-norm residual reaches this.
    double residual_tolerance = 1e-14;
    // 0 selects the default: 50 for d <= 5, 500 above.
    int restarts = 0;
    std::uint64_t seed = 1;
    double barrier_strength = 1e-8;
    // Weight of -log|det V| for the degree-d Vandermonde matrix. It repels
    // iterates from configurations that are not unisolvent and is relaxed
    // together with the boundary barrier.
    double volume_barrier = 1e-3;
    // Weight of the squared-hinge penalty on negative Newton-Cotes weights.
    // It vanishes on rules with positive weights, so it does not move exact
    // solutions; 0 disables it.
    double weight_penalty = 1.0;
    bool verbose = false;
    int threads = 1;
    // Stop after the first batch of restarts that yields a converged rule
    // with positive weights and interior points.
    bool stop_at_first_pi = true;
};

inline int default_restarts(int d)
{
    return d <= 5 ? 50 : 500;
}

/// d + e for the largest e admitted by the degrees-of-freedom count.
inline int default_target_e(int d)
{
    return dof_bound(d) - d;
}

enum class InitKind
{
    warped_lattice,
    random_interior,
    continuation,
};

// One accepted iterate.
struct IterationRecord
{
    int stage = 0;
    double barrier_weight = 0.0;
    double objective = 0.0;
    double max_residual = 0.0;
    double condition_estimate = 0.0;
    double min_barycentric = 0.0;
};

struct RestartOutcome
{
    int index = 0;
    InitKind init = InitKind::random_interior;
    bool degenerate = false;
    bool converged = false;
    std::vector<TrianglePoint> points;
    std::vector<double> weights;
    double max_residual = INFINITY;
    double condition_estimate = INFINITY;
    bool positive_weights = false;
    bool strictly_interior = false;
    int iterations = 0;
    std::vector<IterationRecord> trace;
};

/// Damped Gauss-Newton / Levenberg-Marquardt from the given start, with log
/// barriers on the barycentric coordinates and on |det V|, relaxed stage by
/// stage down to zero. Pass `trace` to record every accepted iterate.
RestartOutcome refine_points(int d, int e, std::vector<TrianglePoint> start,
                             const OptimizerConfig& config, bool trace = false);

/// Starting configuration for restart `index`, deterministic in
/// (config.seed, index).
std::vector<TrianglePoint> initial_points(int d, int e, int index, const OptimizerConfig& config,
                                          InitKind* kind = nullptr);

/// One complete restart: initialization plus refinement.
RestartOutcome run_restart(int d, int index, const OptimizerConfig& config);

enum class OptimizeStatus
{
    converged,
    unconverged,
};

struct OptimizeResult
{
    OptimizeStatus status = OptimizeStatus::unconverged;
    QuadratureRule rule;
    CertificationReport report;
    double best_residual = INFINITY;
    int restarts_run = 0;
    int restarts_converged = 0;
    int chosen_restart = -1;
    std::vector<std::string> warnings;
};

/// Multi-start search for an N = dim P_d point rule of strength d + e.
/// Returns the best candidate; status says whether it reached the target.
/// Throws Error(all_restarts_degenerate) when no restart produced a usable
/// configuration and Error(invalid_argument) for d < 1.
OptimizeResult optimize(int d, const OptimizerConfig& config);

} // namespace triquad

#endif // TRIQUAD_OPTIMIZER_HPP
