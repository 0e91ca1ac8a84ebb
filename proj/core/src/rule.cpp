#include "triquad/rule.hpp"

#include "triquad/error.hpp"
#include "triquad/ortho_basis.hpp"
#include "triquad/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace triquad {

namespace {

// Failures larger than this at degree strength+1 must also be visible to
// the monomial oracle.
constexpr double kDecisiveFailure = 1e-4;

// Cumulative max residual of RMS-normalized unit-triangle monomials for
// degrees 0..max_degree.
std::vector<double> monomial_errors(const QuadratureRule& rule, int max_degree)
{
    const std::size_t npts = rule.size();
    std::vector<std::vector<double>> xpow(npts), ypow(npts);
    for (std::size_t i = 0; i < npts; ++i)
    {
        const BarycentricPoint b = to_barycentric(rule.points[i]);
        xpow[i].resize(max_degree + 1);
        ypow[i].resize(max_degree + 1);
        xpow[i][0] = ypow[i][0] = 1.0;
        for (int k = 1; k <= max_degree; ++k)
        {
            xpow[i][k] = xpow[i][k - 1] * b.b1;
            ypow[i][k] = ypow[i][k - 1] * b.b2;
        }
    }

    std::vector<double> cumulative(max_degree + 1, 0.0);
    double running = 0.0;
    for (int deg = 0; deg <= max_degree; ++deg)
    {
        for (int a = 0; a <= deg; ++a)
        {
            const int b = deg - a;
            double sum = 0.0;
            for (std::size_t i = 0; i < npts; ++i)
                sum += rule.weights[i] * xpow[i][a] * ypow[i][b];
            // Reference measure is four times the unit-triangle measure.
            const double exact = 4.0 * monomial_integral(a, b);
            const double rms = std::sqrt(2.0 * monomial_integral(2 * a, 2 * b));
            running = std::max(running, std::abs(sum - exact) / rms);
        }
        cumulative[deg] = running;
    }
    return cumulative;
}

} // namespace

std::string to_string(Symmetry s)
{
    return s == Symmetry::d3_symmetric ? "d3_symmetric" : "asymmetric";
}

bool QuadratureRule::is_cardinal() const
{
    return cardinal_degree.has_value()
           && static_cast<int>(points.size()) == basis_dimension(*cardinal_degree);
}

double QuadratureRule::weight_sum() const
{
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

QuadratureRule make_cardinal_rule(int d, std::vector<TrianglePoint> points)
{
    const WeightSolution sol = newton_cotes_weights(BasisSpec{d, true}, points);
    QuadratureRule rule;
    rule.cardinal_degree = d;
    rule.points = std::move(points);
    rule.weights.assign(sol.weights.data(), sol.weights.data() + sol.weights.size());
    return rule;
}

CertificationReport certify(const QuadratureRule& rule, double tolerance)
{
    if (rule.points.size() != rule.weights.size())
        throw Error(ErrorKind::invalid_argument, "certify: points and weights differ in length");
    if (rule.points.empty())
        throw Error(ErrorKind::invalid_argument, "certify: empty rule");

    CertificationReport report;
    const Eigen::Map<const Eigen::VectorXd> w(rule.weights.data(),
                                              static_cast<Eigen::Index>(rule.weights.size()));

    // Ascend degree by degree; the basis table is regrown in doublings.
    int evaluated = -1;
    Eigen::VectorXd quad;
    double running = 0.0;
    int deg = 0;
    for (; deg <= kMaxCertifiedDegree; ++deg)
    {
        if (deg > evaluated)
        {
            evaluated = std::min(kMaxCertifiedDegree, std::max(8, 2 * evaluated));
            const BasisEvaluation basis = vandermonde(BasisSpec{evaluated, true}, rule.points);
            quad = basis.values.transpose() * w;
        }

        for (int k = basis_dimension(deg - 1); k < basis_dimension(deg); ++k)
        {
            const double exact = k == 0 ? 2.0 : 0.0;
            running = std::max(running, std::abs(quad(k) - exact));
        }
        report.per_degree_error[deg] = running;
        if (!(running <= tolerance))
        {
            report.failing_degree = deg;
            report.failing_error = running;
            break;
        }
        report.strength = deg;
        report.max_error = running;
    }

    // Monomial cross-check. A residual vector r over an orthonormal basis of
    // P_D bounds the residual of any unit-RMS polynomial by |r|_2, hence by
    // sqrt(dim P_D) * max|r|.
    const int mono_top = std::min(kMaxCertifiedDegree, report.strength + 1);
    const std::vector<double> mono = monomial_errors(rule, mono_top);
    for (int d = 0; d <= mono_top; ++d)
    {
        const double bound = std::sqrt(static_cast<double>(basis_dimension(d))) * tolerance + 1e-13;
        if (!(mono[d] <= bound))
            break;
        report.monomial_strength = d;
        report.monomial_max_error = mono[d];
    }

    if (report.monomial_strength < report.strength)
        throw Error(ErrorKind::oracle_disagreement,
                    "oracle disagreement: basis certifies strength " + std::to_string(report.strength)
                        + " but monomials fail at degree "
                        + std::to_string(report.monomial_strength + 1));
    if (report.failing_degree && report.failing_error > kDecisiveFailure
        && mono[*report.failing_degree] <= tolerance)
        throw Error(ErrorKind::oracle_disagreement,
                    "oracle disagreement: basis fails at degree "
                        + std::to_string(*report.failing_degree)
                        + " but every monomial of that degree is integrated");

    const auto violations = validate(rule);
    report.positive_weights = std::none_of(violations.begin(), violations.end(), [](auto& v) {
        return v.kind == Violation::Kind::non_positive_weight;
    });
    report.all_interior = std::none_of(violations.begin(), violations.end(), [](auto& v) {
        return v.kind == Violation::Kind::exterior_point;
    });
    report.symmetry = classify_symmetry(rule);
    return report;
}

void attach_certification(QuadratureRule& rule, const CertificationReport& report)
{
    rule.certified_strength = report.strength;
    rule.metadata.certified_error = report.max_error;
    rule.metadata.symmetry = report.symmetry;
}

int dof_bound(int d)
{
    const int budget = 3 * basis_dimension(d);
    int top = 0;
    while (basis_dimension(top + 1) <= budget)
        ++top;
    return top;
}

Symmetry classify_symmetry(const QuadratureRule& rule, double tolerance)
{
    const std::size_t n = rule.size();
    if (rule.weights.size() != n)
        return Symmetry::asymmetric;

    std::vector<char> used(n);
    for (const TriangleSymmetry& g : triangle_symmetries())
    {
        std::fill(used.begin(), used.end(), 0);
        for (std::size_t j = 0; j < n; ++j)
        {
            const TrianglePoint image = g.apply(rule.points[j]);
            std::size_t best = n;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i)
            {
                if (used[i])
                    continue;
                const double dist = std::hypot(image.xi1 - rule.points[i].xi1,
                                               image.xi2 - rule.points[i].xi2);
                if (dist < best_dist)
                {
                    best_dist = dist;
                    best = i;
                }
            }
            if (best == n || best_dist > tolerance
                || std::abs(rule.weights[best] - rule.weights[j]) > tolerance)
                return Symmetry::asymmetric;
            used[best] = 1;
        }
    }
    return Symmetry::d3_symmetric;
}

std::vector<Violation> validate(const QuadratureRule& rule)
{
    std::vector<Violation> out;
    if (rule.points.size() != rule.weights.size())
    {
        out.push_back({Violation::Kind::size_mismatch, 0,
                       std::to_string(rule.points.size()) + " points but "
                           + std::to_string(rule.weights.size()) + " weights"});
        return out;
    }
    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        if (!(rule.weights[i] > 0.0))
            out.push_back({Violation::Kind::non_positive_weight, i,
                           "weight " + std::to_string(i) + " is not positive ("
                               + std::to_string(rule.weights[i]) + ")"});
        if (!rule.points[i].is_inside())
            out.push_back({Violation::Kind::exterior_point, i,
                           "point " + std::to_string(i) + " lies outside the triangle"});
    }
    return out;
}

} // namespace triquad
