#ifndef TRIQUAD_RULE_HPP
#define TRIQUAD_RULE_HPP

#include "triquad/domain.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace triquad {

inline constexpr double kCertifyTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-10;

// Strength search stops here; the monomial cross-check needs integrals of
// squared monomials, which caps it at half the oracle's range.
inline constexpr int kMaxCertifiedDegree = kMaxMonomialDegree / 2;

enum class Symmetry
{
    d3_symmetric,
    asymmetric,
};

std::string to_string(Symmetry s);

struct RuleMetadata
{
    std::string generator;
    std::optional<std::uint64_t> seed;
    // Free-form creation stamp. Left empty by the generator so that output
    // stays byte-reproducible.
    std::string created;
    // Strength stated by a file header, before any certification here.
    std::optional<int> claimed_strength;
    std::optional<double> certified_error;
    std::optional<Symmetry> symmetry;
};

/// Points in reference coordinates with weights summing to 2 (the area of
/// the reference triangle).
struct QuadratureRule
{
    std::optional<int> cardinal_degree;
    std::vector<TrianglePoint> points;
    std::vector<double> weights;
    std::optional<int> certified_strength;
    RuleMetadata metadata;

    std::size_t size() const { return points.size(); }
    // N == dim P_d for the declared cardinal degree.
    bool is_cardinal() const;
    double weight_sum() const;
};

/// Builds the cardinal rule on `points` with their Newton-Cotes weights for
/// degree d. Throws Error(degenerate_configuration) on failure.
QuadratureRule make_cardinal_rule(int d, std::vector<TrianglePoint> points);

struct CertificationReport
{
    // Largest D with every normalized basis residual of P_D within
    // tolerance; -1 if even the constant is not integrated.
    int strength = -1;
    // Largest residual over P_strength (0 when strength is -1).
    double max_error = 0.0;
    // Cumulative: largest residual over all of P_D, for D = 0 .. strength + 1.
    std::map<int, double> per_degree_error;
    // The first degree that failed and its residual, if the search stopped
    // below kMaxCertifiedDegree.
    std::optional<int> failing_degree;
    double failing_error = 0.0;
    // Same search with RMS-normalized monomials on the unit triangle.
    int monomial_strength = -1;
    double monomial_max_error = 0.0;

    bool positive_weights = false;
    bool all_interior = false;
    Symmetry symmetry = Symmetry::asymmetric;
};

/// Certifies the strength of a rule against the normalized
/// Koornwinder-Dubiner basis and cross-checks it against exact monomial
/// integrals. Throws Error(oracle_disagreement) when the two disagree
/// decisively, and Error(invalid_argument) when points and weights differ in
/// length.
CertificationReport certify(const QuadratureRule& rule, double tolerance = kCertifyTolerance);

/// Stores strength and error from a report into the rule.
void attach_certification(QuadratureRule& rule, const CertificationReport& report);

/// Largest D with dim P_D <= 3 dim P_d.
int dof_bound(int d);

Symmetry classify_symmetry(const QuadratureRule& rule, double tolerance = kSymmetryTolerance);

struct Violation
{
    enum class Kind
    {
        size_mismatch,
        non_positive_weight,
        exterior_point,
    };

    Kind kind;
    std::size_t index = 0;
    std::string message;
};

/// Empty iff weights and points match in count, every weight is positive and
/// every point is interior-or-boundary.
std::vector<Violation> validate(const QuadratureRule& rule);

} // namespace triquad

#endif // TRIQUAD_RULE_HPP
