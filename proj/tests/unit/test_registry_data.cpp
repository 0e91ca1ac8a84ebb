#include "triquad/ortho_basis.hpp"
#include "triquad/registry.hpp"
#include "triquad/rule.hpp"
#include "triquad/rule_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

namespace triquad {
namespace {

// The rules shipped in data/rules.
TEST(ShippedRegistry, DigestsRoundTripAndStrength)
{
    const RuleRegistry reg(TRIQUAD_RULES_DIR);
    const auto entries = reg.entries();
    ASSERT_FALSE(entries.empty());
    for (const auto& e : entries)
    {
        SCOPED_TRACE(e.file);
        ASSERT_TRUE(reg.digest_matches(e));
        const QuadratureRule rule = reg.load(e);
        EXPECT_EQ(static_cast<int>(rule.size()), basis_dimension(e.cardinal_degree));

        const QuadratureRule back = parse_rule(emit_rule(rule));
        ASSERT_EQ(back.size(), rule.size());
        double dev = 0.0;
        for (std::size_t j = 0; j < rule.size(); ++j)
            dev = std::max({dev, std::abs(back.points[j].xi1 - rule.points[j].xi1),
                            std::abs(back.points[j].xi2 - rule.points[j].xi2),
                            std::abs(back.weights[j] - rule.weights[j])});
        EXPECT_LE(dev, 1e-15);

        const CertificationReport r = certify(rule);
        EXPECT_GE(r.strength, e.strength);
        EXPECT_TRUE(r.positive_weights);
        EXPECT_TRUE(r.all_interior);
    }
}

} // namespace
} // namespace triquad
