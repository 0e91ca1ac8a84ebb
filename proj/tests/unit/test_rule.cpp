#include "triquad/rule.hpp"

#include "triquad/error.hpp"
#include "triquad/ortho_basis.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace triquad {
namespace {

QuadratureRule transformed(const QuadratureRule& rule, const TriangleSymmetry& s)
{
    QuadratureRule out = rule;
    for (auto& p : out.points)
        p = s.apply(p);
    return out;
}

TEST(Certify, MidpointRule)
{
    const auto r = certify(fixtures::midpoint_rule());
    EXPECT_EQ(r.strength, 2);
    EXPECT_LE(r.max_error, 1e-15);
    EXPECT_EQ(r.monomial_strength, 2);
    ASSERT_TRUE(r.failing_degree.has_value());
    EXPECT_EQ(*r.failing_degree, 3);
    EXPECT_TRUE(r.positive_weights);
    EXPECT_TRUE(r.all_interior);
    EXPECT_EQ(r.symmetry, Symmetry::d3_symmetric);
}

TEST(Certify, CentroidRule)
{
    const auto r = certify(fixtures::centroid_rule());
    EXPECT_EQ(r.strength, 1);
    EXPECT_EQ(r.symmetry, Symmetry::d3_symmetric);
}

TEST(Certify, PublishedStrengthFour)
{
    const auto r = certify(fixtures::strength_four_six_point());
    EXPECT_EQ(r.strength, 4);
    EXPECT_LE(r.max_error, 1e-13);
    EXPECT_EQ(r.symmetry, Symmetry::d3_symmetric);
}

TEST(Certify, VertexRule)
{
    // vertices with weight 2/3 each: linears only
    QuadratureRule rule;
    rule.points.assign(kVertices.begin(), kVertices.end());
    rule.weights = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    const auto r = certify(rule);
    EXPECT_EQ(r.strength, 1);
    EXPECT_GT(r.failing_error, 0.1);
}

TEST(Certify, CumulativeErrorIsMonotone)
{
    QuadratureRule rule = make_cardinal_rule(4, fixtures::random_points(15, 21));
    const auto r = certify(rule);
    EXPECT_GE(r.strength, 4);
    double prev = 0.0;
    for (const auto& [deg, err] : r.per_degree_error)
    {
        EXPECT_GE(err, prev);
        prev = err;
    }
    EXPECT_EQ(r.max_error, r.per_degree_error.at(r.strength));
}

TEST(Certify, CardinalRulesReachTheirDegree)
{
    for (int d = 0; d <= 8; ++d)
    {
        const auto rule = make_cardinal_rule(d, fixtures::random_points(basis_dimension(d), 50 + d));
        EXPECT_GE(certify(rule).strength, d) << "d=" << d;
    }
}

TEST(Certify, InvariantUnderSymmetries)
{
    const QuadratureRule rule = make_cardinal_rule(5, fixtures::random_points(21, 8));
    const auto base = certify(rule);
    for (const auto& s : triangle_symmetries())
    {
        const auto r = certify(transformed(rule, s));
        EXPECT_EQ(r.strength, base.strength);
        EXPECT_NEAR(r.max_error, base.max_error, 1e-13);
    }
}

TEST(Certify, RejectsMalformed)
{
    QuadratureRule rule = fixtures::midpoint_rule();
    rule.weights.pop_back();
    EXPECT_THROW(certify(rule), Error);
    EXPECT_THROW(certify(QuadratureRule{}), Error);
}

TEST(Certify, NoStrengthWhenConstantFails)
{
    QuadratureRule rule = fixtures::centroid_rule();
    rule.weights[0] = 1.0;
    const auto r = certify(rule);
    EXPECT_EQ(r.strength, -1);
    EXPECT_EQ(*r.failing_degree, 0);
}

TEST(Certify, AttachStoresResult)
{
    QuadratureRule rule = fixtures::midpoint_rule();
    const auto r = certify(rule);
    attach_certification(rule, r);
    EXPECT_EQ(rule.certified_strength, 2);
    EXPECT_EQ(rule.metadata.symmetry, Symmetry::d3_symmetric);
    EXPECT_TRUE(rule.is_cardinal());
    EXPECT_NEAR(rule.weight_sum(), 2.0, 1e-15);
}

TEST(DofBound, TableValues)
{
    // d + e achieved in the published table, d = 1..14
    const int achieved[] = {2, 4, 5, 7, 9, 11, 13, 14, 16, 18, 20, 21, 23, 25};
    for (int d = 1; d <= 14; ++d)
    {
        const int expected = (d == 3 || d == 4) ? achieved[d - 1] + 1 : achieved[d - 1];
        EXPECT_EQ(dof_bound(d), expected) << "d=" << d;
    }
    EXPECT_EQ(dof_bound(0), 1);
    // definition
    for (int d = 0; d <= 30; ++d)
    {
        EXPECT_LE(basis_dimension(dof_bound(d)), 3 * basis_dimension(d));
        EXPECT_GT(basis_dimension(dof_bound(d) + 1), 3 * basis_dimension(d));
    }
}

TEST(Symmetry, Classification)
{
    EXPECT_EQ(classify_symmetry(fixtures::midpoint_rule()), Symmetry::d3_symmetric);
    EXPECT_EQ(classify_symmetry(fixtures::centroid_rule()), Symmetry::d3_symmetric);
    EXPECT_EQ(classify_symmetry(fixtures::strength_four_six_point()), Symmetry::d3_symmetric);

    QuadratureRule bent = fixtures::midpoint_rule();
    bent.points[0].xi1 += 1e-6;
    EXPECT_EQ(classify_symmetry(bent), Symmetry::asymmetric);

    // points symmetric, weights not
    QuadratureRule heavy = fixtures::midpoint_rule();
    heavy.weights = {1.0, 0.5, 0.5};
    EXPECT_EQ(classify_symmetry(heavy), Symmetry::asymmetric);

    // noise below the tolerance is ignored
    QuadratureRule noisy = fixtures::strength_four_six_point();
    noisy.points[2].xi2 += 1e-12;
    EXPECT_EQ(classify_symmetry(noisy), Symmetry::d3_symmetric);

    EXPECT_EQ(classify_symmetry(make_cardinal_rule(3, fixtures::random_points(10, 2))),
              Symmetry::asymmetric);
}

TEST(Symmetry, MirrorOnlyIsAsymmetric)
{
    // invariant under the reflection swapping b1 and b2 but not under rotation
    QuadratureRule rule;
    for (const auto& [b1, b2] : {std::pair{0.2, 0.2}, std::pair{0.5, 0.1}, std::pair{0.1, 0.5}})
        rule.points.push_back(from_barycentric({b1, b2}));
    rule.weights = {0.5, 0.75, 0.75};
    EXPECT_EQ(classify_symmetry(rule), Symmetry::asymmetric);
}

TEST(Validate, Violations)
{
    EXPECT_TRUE(validate(fixtures::midpoint_rule()).empty());

    QuadratureRule neg = fixtures::midpoint_rule();
    neg.weights[1] = -0.1;
    const auto v1 = validate(neg);
    ASSERT_EQ(v1.size(), 1u);
    EXPECT_EQ(v1[0].kind, Violation::Kind::non_positive_weight);
    EXPECT_EQ(v1[0].index, 1u);

    QuadratureRule out = fixtures::midpoint_rule();
    out.points[2] = from_barycentric({1.1, -0.05});
    const auto v2 = validate(out);
    ASSERT_EQ(v2.size(), 1u);
    EXPECT_EQ(v2[0].kind, Violation::Kind::exterior_point);
    EXPECT_EQ(v2[0].index, 2u);

    QuadratureRule bad = fixtures::midpoint_rule();
    bad.weights.push_back(1.0);
    ASSERT_EQ(validate(bad).size(), 1u);
    EXPECT_EQ(validate(bad)[0].kind, Violation::Kind::size_mismatch);
}

TEST(Rule, CardinalConstruction)
{
    const auto rule = make_cardinal_rule(1, fixtures::midpoints());
    EXPECT_TRUE(rule.is_cardinal());
    for (double w : rule.weights)
        EXPECT_NEAR(w, 2.0 / 3.0, 1e-15);

    QuadratureRule foreign = fixtures::strength_four_six_point();
    foreign.points.pop_back();
    foreign.weights.pop_back();
    EXPECT_FALSE(foreign.is_cardinal());
}

} // namespace
} // namespace triquad
