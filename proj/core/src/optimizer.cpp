#include "triquad/optimizer.hpp"

#include "triquad/error.hpp"
#include "triquad/weights.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <random>
#include <thread>
#include <tuple>

namespace triquad {

namespace {

constexpr double kInitialDamping = 1e-3;
constexpr double kMinDamping = 1e-12;
constexpr double kMaxDamping = 1e16;
constexpr double kDampingGrow = 10.0;
constexpr double kDampingShrink = 3.0;
// Barrier weights are relaxed 10x per stage and dropped to zero once the
// relaxation factor falls below this.
constexpr double kFinalRelaxation = 1e-6;
constexpr double kStageDecrease = 1e-8;
constexpr int kStageIterations = 200;
constexpr double kStepStall = 1e-15;
constexpr double kRandomInitCondition = 1e8;
constexpr int kBatchSize = 8;

// Fixed gradients of the barycentric coordinates in reference coordinates.
constexpr double kBaryGrad[3][2] = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, -0.5}};

// Boundary and Vandermonde-volume barrier weights; both shrink together and
// vanish in the final stage.
struct Barrier
{
    double boundary = 0.0;
    double volume = 0.0;

    bool active() const { return boundary > 0.0 || volume > 0.0; }
};

struct Iterate
{
    std::vector<TrianglePoint> points;
    ResidualModel model;
    // Squared-hinge penalty residuals on negative weights and their rows.
    Eigen::VectorXd penalty;
    Eigen::MatrixXd penalty_jac;
    double barrier = 0.0;
    Eigen::VectorXd barrier_grad;
    Eigen::VectorXd barrier_hess; // 3 entries per point: (00, 01, 11)
    double min_bary = 0.0;

    double objective(const Barrier& mu) const
    {
        return 0.5 * (model.residual.squaredNorm() + penalty.squaredNorm()) + mu.boundary * barrier
               - mu.volume * model.log_volume;
    }
    double max_residual() const
    {
        return model.residual.size() ? model.residual.lpNorm<Eigen::Infinity>() : 0.0;
    }
};

// False when a point violates the feasibility rule of the current stage:
// strict interior while the barrier is active, interior-or-boundary after.
bool evaluate_iterate(int d, int e, const Barrier& mu, double rho, Iterate& it)
{
    const auto n = static_cast<Eigen::Index>(it.points.size());
    it.barrier = 0.0;
    it.barrier_grad = Eigen::VectorXd::Zero(2 * n);
    it.barrier_hess = Eigen::VectorXd::Zero(3 * n);
    it.min_bary = INFINITY;
    for (Eigen::Index j = 0; j < n; ++j)
    {
        const auto t = barycentric_triple(it.points[j]);
        for (int i = 0; i < 3; ++i)
        {
            it.min_bary = std::min(it.min_bary, t[i]);
            if (mu.active())
            {
                if (!(t[i] > 0.0))
                    return false;
                it.barrier -= std::log(t[i]);
                it.barrier_grad(2 * j) -= kBaryGrad[i][0] / t[i];
                it.barrier_grad(2 * j + 1) -= kBaryGrad[i][1] / t[i];
                const double s = 1.0 / (t[i] * t[i]);
                it.barrier_hess(3 * j) += s * kBaryGrad[i][0] * kBaryGrad[i][0];
                it.barrier_hess(3 * j + 1) += s * kBaryGrad[i][0] * kBaryGrad[i][1];
                it.barrier_hess(3 * j + 2) += s * kBaryGrad[i][1] * kBaryGrad[i][1];
            }
        }
        if (!mu.active() && !it.points[j].is_inside())
            return false;
    }

    try
    {
        it.model = ResidualModel::evaluate(d, e, it.points, true);
    }
    catch (const Error& err)
    {
        if (err.kind() != ErrorKind::degenerate_configuration)
            throw;
        return false;
    }

    const double root = std::sqrt(std::max(rho, 0.0));
    it.penalty = Eigen::VectorXd::Zero(n);
    it.penalty_jac = Eigen::MatrixXd::Zero(n, 2 * n);
    if (root > 0.0)
        for (Eigen::Index j = 0; j < n; ++j)
            if (it.model.weights(j) < 0.0)
            {
                it.penalty(j) = root * it.model.weights(j);
                it.penalty_jac.row(j) = root * it.model.weight_jacobian.row(j);
            }
    return true;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int index, std::uint32_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), stream};
    return std::mt19937_64(seq);
}

TrianglePoint random_interior_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double u = unit(rng);
    double v = unit(rng);
    if (u + v > 1.0)
    {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    return from_barycentric({u, v});
}

std::vector<TrianglePoint> random_configuration(int d, std::mt19937_64& rng)
{
    const int n = basis_dimension(d);
    std::vector<TrianglePoint> pts(n);
    for (int attempt = 0; attempt < 1000; ++attempt)
    {
        for (auto& p : pts)
            p = random_interior_point(rng);
        try
        {
            if (NewtonCotesSystem(BasisSpec{d, true}, pts).solution().condition_estimate
                < kRandomInitCondition)
                return pts;
        }
        catch (const Error&)
        {
        }
    }
    return pts;
}

// Equispaced lattice i + j <= d pulled toward the centroid and jittered.
std::vector<TrianglePoint> warped_lattice(int d, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> shrink_dist(0.6, 0.9);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    const double shrink = shrink_dist(rng);
    const double amp = 0.15 / d;

    std::vector<TrianglePoint> pts;
    pts.reserve(basis_dimension(d));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
        {
            const double b1 = 1.0 / 3.0 + shrink * (static_cast<double>(i) / d - 1.0 / 3.0);
            const double b2 = 1.0 / 3.0 + shrink * (static_cast<double>(j) / d - 1.0 / 3.0);
            TrianglePoint p = from_barycentric({b1, b2});
            const TrianglePoint moved{p.xi1 + amp * jitter(rng), p.xi2 + amp * jitter(rng)};
            const auto t = barycentric_triple(moved);
            if (t[0] > 0.0 && t[1] > 0.0 && t[2] > 0.0)
                p = moved;
            pts.push_back(p);
        }
    return pts;
}

void solve_step(const Iterate& it, const Barrier& mu, double lambda, Eigen::VectorXd& step)
{
    const Eigen::MatrixXd& jac = it.model.jacobian;
    const Eigen::Index nvar = static_cast<Eigen::Index>(2 * it.points.size());
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd grad = jac.transpose() * it.model.residual;
    if (it.penalty.any())
    {
        normal += it.penalty_jac.transpose() * it.penalty_jac;
        grad += it.penalty_jac.transpose() * it.penalty;
    }
    if (mu.boundary > 0.0)
    {
        const double b = mu.boundary;
        grad += b * it.barrier_grad;
        for (Eigen::Index j = 0; 2 * j < nvar; ++j)
        {
            normal(2 * j, 2 * j) += b * it.barrier_hess(3 * j);
            normal(2 * j, 2 * j + 1) += b * it.barrier_hess(3 * j + 1);
            normal(2 * j + 1, 2 * j) += b * it.barrier_hess(3 * j + 1);
            normal(2 * j + 1, 2 * j + 1) += b * it.barrier_hess(3 * j + 2);
        }
    }
    // Gradient only: the volume term keeps iterates off the singular set but
    // has no useful Gauss-Newton curvature.
    if (mu.volume > 0.0)
        grad -= mu.volume * it.model.log_volume_gradient;

    // Levenberg damping, scaled by the mean curvature. Marquardt's per-column
    // scaling lets near-singular configurations dominate the step.
    normal.diagonal().array() += lambda * std::max(normal.diagonal().mean(), 1e-300);

    step = -normal.ldlt().solve(grad);
}

} // namespace

ResidualModel ResidualModel::evaluate(int d, int e, std::span<const TrianglePoint> points,
                                      bool with_jacobian)
{
    const BasisSpec low{d, true};
    const int nlow = low.dimension();
    const int ntotal = basis_dimension(d + e);
    const int nshell = ntotal - nlow;

    BasisEvaluation full = vandermonde(BasisSpec{d + e, true}, points, with_jacobian);
    if (full.values.rows() != nlow)
        throw Error(ErrorKind::degenerate_configuration,
                    "residual needs " + std::to_string(nlow) + " points for degree "
                        + std::to_string(d));

    BasisEvaluation lowpart;
    lowpart.values = full.values.leftCols(nlow);
    if (with_jacobian)
    {
        lowpart.d_xi1 = full.d_xi1.leftCols(nlow);
        lowpart.d_xi2 = full.d_xi2.leftCols(nlow);
    }
    const NewtonCotesSystem system(low, std::move(lowpart));

    ResidualModel model;
    model.weights = system.weights();
    model.condition_estimate = system.solution().condition_estimate;
    const auto shell = full.values.rightCols(nshell);
    // Shell functions integrate to zero.
    model.residual = shell.transpose() * model.weights;
    model.log_volume = system.log_abs_determinant();

    if (with_jacobian)
    {
        const Eigen::Index n = nlow;
        model.weight_jacobian = system.weight_jacobian();
        // d log|det V| / dV(j, k) = V^{-1}(k, j)
        const Eigen::MatrixXd inverse =
            system.solve(Eigen::MatrixXd::Identity(nlow, nlow));
        model.log_volume_gradient.resize(2 * nlow);
        for (Eigen::Index j = 0; j < nlow; ++j)
        {
            model.log_volume_gradient(2 * j) = system.basis().d_xi1.row(j).dot(inverse.col(j));
            model.log_volume_gradient(2 * j + 1) = system.basis().d_xi2.row(j).dot(inverse.col(j));
        }
        model.jacobian.resize(nshell, 2 * n);
        if (nshell > 0)
        {
            const Eigen::MatrixXd coupling = system.solve(shell);
            const Eigen::MatrixXd ex =
                full.d_xi1.rightCols(nshell) - system.basis().d_xi1 * coupling;
            const Eigen::MatrixXd ey =
                full.d_xi2.rightCols(nshell) - system.basis().d_xi2 * coupling;
            for (Eigen::Index j = 0; j < n; ++j)
            {
                model.jacobian.col(2 * j) = model.weights(j) * ex.row(j).transpose();
                model.jacobian.col(2 * j + 1) = model.weights(j) * ey.row(j).transpose();
            }
        }
    }
    return model;
}

Eigen::VectorXd residual(const BasisSpec& spec_d, const BasisSpec& spec_de,
                         std::span<const TrianglePoint> points)
{
    return ResidualModel::evaluate(spec_d.degree, spec_de.degree - spec_d.degree, points, false)
        .residual;
}

Eigen::MatrixXd residual_jacobian(const BasisSpec& spec_d, const BasisSpec& spec_de,
                                  std::span<const TrianglePoint> points)
{
    return ResidualModel::evaluate(spec_d.degree, spec_de.degree - spec_d.degree, points, true)
        .jacobian;
}

RestartOutcome refine_points(int d, int e, std::vector<TrianglePoint> start,
                             const OptimizerConfig& config, bool trace)
{
    RestartOutcome out;
    double relax = 1.0;
    Barrier mu;
    auto set_barrier = [&] {
        mu.boundary = relax * std::max(config.barrier_strength, 0.0);
        mu.volume = relax * std::max(config.volume_barrier, 0.0);
    };
    set_barrier();
    const double rho = config.weight_penalty;

    Iterate cur;
    cur.points = std::move(start);
    if (!evaluate_iterate(d, e, mu, rho, cur))
    {
        // The start may touch the boundary; retry without the barriers.
        relax = 0.0;
        set_barrier();
        if (!evaluate_iterate(d, e, mu, rho, cur))
        {
            out.degenerate = true;
            out.points = cur.points;
            return out;
        }
    }

    const double tol = config.residual_tolerance;
    int stage = 0;
    int stage_iters = 0;
    double lambda = kInitialDamping;
    bool stalled = false;
    Eigen::VectorXd step;

    auto record = [&] {
        if (trace)
            out.trace.push_back({stage, mu.boundary, cur.objective(mu), cur.max_residual(),
                                 cur.model.condition_estimate, cur.min_bary});
    };
    record();

    auto next_stage = [&] {
        relax = relax / 10.0 < kFinalRelaxation ? 0.0 : relax / 10.0;
        set_barrier();
        ++stage;
        stage_iters = 0;
        lambda = kInitialDamping;
        evaluate_iterate(d, e, mu, rho, cur);
        record();
    };

    if (cur.model.residual.size() == 0)
    {
        relax = 0.0;
        set_barrier();
    }

    while (out.iterations < config.max_iterations)
    {
        if (!mu.active() && cur.max_residual() <= tol)
            break;

        solve_step(cur, mu, lambda, step);
        ++out.iterations;
        ++stage_iters;

        Iterate trial;
        trial.points = cur.points;
        for (std::size_t j = 0; j < trial.points.size(); ++j)
        {
            trial.points[j].xi1 += step(2 * j);
            trial.points[j].xi2 += step(2 * j + 1);
        }

        const double f_old = cur.objective(mu);
        const bool ok = step.allFinite() && evaluate_iterate(d, e, mu, rho, trial);
        if (ok && trial.objective(mu) < f_old)
        {
            double xnorm = 0.0;
            for (const auto& p : cur.points)
                xnorm += p.xi1 * p.xi1 + p.xi2 * p.xi2;
            const double rel_step = step.norm() / std::max(std::sqrt(xnorm), 1.0);
            const double decrease = f_old - trial.objective(mu);

            cur = std::move(trial);
            lambda = std::max(lambda / kDampingShrink, kMinDamping);
            record();

            if (mu.active())
            {
                if (decrease <= kStageDecrease * std::abs(f_old) || stage_iters >= kStageIterations)
                    next_stage();
            }
            else if (rel_step < kStepStall)
            {
                stalled = true;
                break;
            }
        }
        else
        {
            lambda *= kDampingGrow;
            if (lambda > kMaxDamping)
            {
                if (mu.active())
                    next_stage();
                else
                {
                    stalled = true;
                    break;
                }
            }
        }

        if (config.verbose && out.iterations % 100 == 0)
            std::clog << "  iter " << out.iterations << " stage " << stage << " max|r| "
                      << cur.max_residual() << " lambda " << lambda << "\n";
    }

    // A barrier still active at the iteration cap is dropped for the report.
    if (mu.active())
        evaluate_iterate(d, e, Barrier{}, rho, cur);

    out.points = cur.points;
    out.weights.assign(cur.model.weights.data(),
                       cur.model.weights.data() + cur.model.weights.size());
    out.max_residual = cur.max_residual();
    out.condition_estimate = cur.model.condition_estimate;
    // Rounding puts a floor under the residual that grows with N; a stalled
    // run inside the certification tolerance still counts.
    out.converged = out.max_residual <= tol || (stalled && out.max_residual <= kCertifyTolerance);
    out.positive_weights = std::all_of(out.weights.begin(), out.weights.end(),
                                       [](double w) { return w > 0.0; });
    out.strictly_interior = std::all_of(out.points.begin(), out.points.end(), [](const auto& p) {
        const auto t = barycentric_triple(p);
        return t[0] > kInteriorTolerance && t[1] > kInteriorTolerance && t[2] > kInteriorTolerance;
    });
    return out;
}

std::vector<TrianglePoint> initial_points(int d, int e, int index, const OptimizerConfig& config,
                                          InitKind* kind)
{
    auto rng = restart_rng(config.seed, index, 0);
    InitKind k = static_cast<InitKind>(index % 3);
    if (k == InitKind::continuation && e < 2)
        k = InitKind::random_interior;
    if (kind)
        *kind = k;

    switch (k)
    {
        case InitKind::warped_lattice:
            return warped_lattice(d, rng);
        case InitKind::random_interior:
            return random_configuration(d, rng);
        case InitKind::continuation:
            break;
    }

    // Solve the easier e - 1 problem, then perturb its solution.
    OptimizerConfig inner = config;
    inner.max_iterations = config.max_iterations / 2;
    inner.verbose = false;
    const RestartOutcome lower = refine_points(d, e - 1, random_configuration(d, rng), inner);
    std::vector<TrianglePoint> pts = lower.points;
    std::normal_distribution<double> noise(0.0, 0.02 / d);
    for (auto& p : pts)
    {
        const TrianglePoint moved{p.xi1 + noise(rng), p.xi2 + noise(rng)};
        const auto t = barycentric_triple(moved);
        if (t[0] > 0.0 && t[1] > 0.0 && t[2] > 0.0)
            p = moved;
    }
    return pts;
}

RestartOutcome run_restart(int d, int index, const OptimizerConfig& config)
{
    InitKind kind{};
    std::vector<TrianglePoint> start = initial_points(d, config.target_e, index, config, &kind);
    RestartOutcome out = refine_points(d, config.target_e, std::move(start), config);
    out.index = index;
    out.init = kind;
    return out;
}

OptimizeResult optimize(int d, const OptimizerConfig& config)
{
    if (d < 1)
        throw Error(ErrorKind::invalid_argument, "optimize needs d >= 1");
    if (config.target_e < 0)
        throw Error(ErrorKind::invalid_argument, "optimize needs target_e >= 0");
    const int e = config.target_e;

    OptimizeResult result;
    if (d + e > dof_bound(d))
        result.warnings.push_back("target degree " + std::to_string(d + e)
                                  + " exceeds the degrees-of-freedom bound "
                                  + std::to_string(dof_bound(d)) + "; likely infeasible");
    if (config.verbose)
        for (const auto& w : result.warnings)
            std::clog << "warning: " << w << "\n";

    const int total = config.restarts > 0 ? config.restarts : default_restarts(d);
    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(total);

    auto is_pi = [](const RestartOutcome& o) {
        return o.converged && o.positive_weights && o.strictly_interior;
    };

    for (int begin = 0; begin < total; begin += kBatchSize)
    {
        const int end = std::min(total, begin + kBatchSize);
        std::vector<RestartOutcome> batch(end - begin);
        std::atomic<int> next{begin};
        auto worker = [&] {
            for (int i = next++; i < end; i = next++)
                batch[i - begin] = run_restart(d, i, config);
        };
        const int nthreads = std::clamp(config.threads, 1, end - begin);
        if (nthreads == 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (int t = 0; t < nthreads; ++t)
                pool.emplace_back(worker);
        }

        for (auto& o : batch)
        {
            if (config.verbose)
                std::clog << "restart " << o.index << ": "
                          << (o.degenerate ? "degenerate" : o.converged ? "converged" : "unconverged")
                          << " max|r| " << o.max_residual << " iters " << o.iterations
                          << (o.positive_weights ? " positive" : "")
                          << (o.strictly_interior ? " interior" : "") << "\n";
            outcomes.push_back(std::move(o));
        }
        if (config.stop_at_first_pi && std::any_of(outcomes.begin(), outcomes.end(), is_pi))
            break;
    }
    result.restarts_run = static_cast<int>(outcomes.size());

    // Deterministic reduction: converged first, then positive weights,
    // interior points, residual, conditioning and finally restart index.
    const RestartOutcome* best = nullptr;
    auto key = [](const RestartOutcome& o) {
        return std::make_tuple(!o.converged, !o.positive_weights, !o.strictly_interior,
                               o.max_residual, o.condition_estimate, o.index);
    };
    for (const auto& o : outcomes)
    {
        if (o.degenerate || o.weights.empty())
            continue;
        if (o.converged)
            ++result.restarts_converged;
        if (!best || key(o) < key(*best))
            best = &o;
    }
    if (!best)
        throw Error(ErrorKind::all_restarts_degenerate,
                    "all " + std::to_string(result.restarts_run) + " restarts were degenerate");

    result.chosen_restart = best->index;
    result.best_residual = best->max_residual;
    result.rule.cardinal_degree = d;
    result.rule.points = best->points;
    result.rule.weights = best->weights;
    result.rule.metadata.generator = "triquad optimize d=" + std::to_string(d)
                                     + " e=" + std::to_string(e)
                                     + " restart=" + std::to_string(best->index);
    result.rule.metadata.seed = config.seed;

    result.report = certify(result.rule);
    attach_certification(result.rule, result.report);
    result.status = best->converged && result.report.strength >= d + e
                        ? OptimizeStatus::converged
                        : OptimizeStatus::unconverged;
    return result;
}

} // namespace triquad
