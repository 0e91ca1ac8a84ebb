#include "cli.hpp"

#include "triquad/rule_io.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace triquad {
namespace {

namespace fs = std::filesystem;

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("triquad_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

TEST(Cli, BoundMatchesTableRow)
{
    const Outcome r = run({"bound", "--d", "5"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(r.out, "N=21 3N=63 max_degree=9\n");
}

TEST(Cli, GenerateThenVerify)
{
    const fs::path dir = scratch_dir("generate");
    const std::string file = (dir / "d2.txt").string();
    const Outcome g = run({"generate", "--d", "2", "--seed", "3", "--out", file});
    ASSERT_EQ(g.code, cli::kExitOk) << g.err;
    EXPECT_NE(g.out.find("strength=4"), std::string::npos);
    // No registry unless asked for.
    EXPECT_EQ(g.err.find("stored"), std::string::npos) << g.err;

    const Outcome v = run({"verify", file, "--json"});
    ASSERT_EQ(v.code, cli::kExitOk) << v.err;
    const auto j = nlohmann::json::parse(v.out);
    EXPECT_EQ(j["strength"], 4);
    EXPECT_LE(j["max_error"].get<double>(), 1e-13);
    EXPECT_TRUE(j["positive_weights"].get<bool>());
    EXPECT_TRUE(j["all_interior"].get<bool>());
    EXPECT_EQ(j["n_points"], 6);
    EXPECT_EQ(j["d"], 2);
    EXPECT_TRUE(j.contains("symmetry"));
}

TEST(Cli, GenerateIsByteDeterministic)
{
    const Outcome a = run({"generate", "--d", "3", "--e", "2", "--seed", "11"});
    const Outcome b = run({"generate", "--d", "3", "--e", "2", "--seed", "11"});
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UnconvergedGenerateReportsShortfall)
{
    const Outcome r = run({"generate", "--d", "3", "--e", "3", "--restarts", "2"});
    EXPECT_EQ(r.code, cli::kExitShortfall);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(r.err.rfind("triquad: error: unconverged", 0), 0u);
}

TEST(Cli, VerifyFailsWhenClaimExceedsStrength)
{
    const fs::path dir = scratch_dir("claim");
    QuadratureRule rule = fixtures::midpoint_rule();
    rule.metadata.claimed_strength = 3;
    write_rule_file(dir / "mid.txt", rule);
    const Outcome r = run({"verify", (dir / "mid.txt").string()});
    EXPECT_EQ(r.code, cli::kExitShortfall);
    EXPECT_NE(r.out.find("strength=2"), std::string::npos);
    EXPECT_NE(r.out.find("sym=d3_symmetric"), std::string::npos);
}

TEST(Cli, VerifyTruncatedFileIsParseError)
{
    const fs::path dir = scratch_dir("truncated");
    const std::string text = emit_rule(fixtures::strength_four_six_point());
    std::ofstream(dir / "cut.txt") << text.substr(0, text.size() - 20);
    const Outcome r = run({"verify", (dir / "cut.txt").string()});
    EXPECT_NE(r.code, cli::kExitOk);
    EXPECT_EQ(r.err.rfind("triquad: error:", 0), 0u);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, WeightsRecomputesNewtonCotes)
{
    const fs::path dir = scratch_dir("weights");
    QuadratureRule rule = fixtures::midpoint_rule();
    rule.weights = {1.0, 0.5, 0.5};
    write_rule_file(dir / "bad.txt", rule);
    const Outcome r = run({"weights", (dir / "bad.txt").string(), "--d", "1"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const QuadratureRule fixed = parse_rule(r.out);
    for (double w : fixed.weights)
        EXPECT_NEAR(w, 2.0 / 3.0, 1e-15);
}

TEST(Cli, ConvertAndPlotWriteFiles)
{
    const fs::path dir = scratch_dir("convert");
    write_rule_file(dir / "c.txt", fixtures::centroid_rule());
    const Outcome c = run({"convert", (dir / "c.txt").string(), "--to", "unit"});
    ASSERT_EQ(c.code, cli::kExitOk) << c.err;
    std::istringstream lines(c.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line[0], '#');
    double x = 0, y = 0, w = 0;
    lines >> x >> y >> w;
    EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(y, 1.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(w, 0.5);

    const fs::path svg = dir / "c.svg";
    ASSERT_EQ(run({"plot", (dir / "c.txt").string(), "--out", svg.string()}).code, cli::kExitOk);
    const std::string first = slurp(svg);
    ASSERT_EQ(run({"plot", (dir / "c.txt").string(), "--out", svg.string()}).code, cli::kExitOk);
    EXPECT_EQ(first, slurp(svg));
    EXPECT_NE(first.find("<circle"), std::string::npos);
}

TEST(Cli, TableListsRegistryAndFlagsTampering)
{
    const fs::path dir = scratch_dir("table");
    ASSERT_EQ(run({"generate", "--d", "1", "--registry", dir.string()}).code, cli::kExitOk);
    const Outcome t = run({"table", "--registry", dir.string()});
    ASSERT_EQ(t.code, cli::kExitOk) << t.err;
    EXPECT_NE(t.out.find("tri_d1_s2.txt"), std::string::npos);

    std::ofstream(dir / "tri_d1_s2.txt", std::ios::app) << "# edited\n";
    const Outcome bad = run({"table", "--registry", dir.string()});
    EXPECT_EQ(bad.code, cli::kExitError);
    EXPECT_NE(bad.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, UsageErrorsAreOneLine)
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {}, {"frobnicate"}, {"bound"}, {"convert", "x.txt", "--to", "polar"}})
    {
        const Outcome r = run(args);
        EXPECT_EQ(r.code, cli::kExitError);
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
    }
}

} // namespace
} // namespace triquad
