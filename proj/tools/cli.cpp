#include "cli.hpp"

#include "triquad/error.hpp"
#include "triquad/optimizer.hpp"
#include "triquad/ortho_basis.hpp"
#include "triquad/registry.hpp"
#include "triquad/rule.hpp"
#include "triquad/rule_io.hpp"
#include "triquad/svg_plot.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <optional>

namespace triquad::cli {

namespace {

using nlohmann::ordered_json;

struct Options
{
    // generate
    int d = 0;
    std::optional<int> e;
    std::uint64_t seed = 1;
    int restarts = 0;
    int threads = 1;
    bool verbose = false;
    std::string out_file;
    std::string registry;
    std::string table_registry = "data/rules";
    // file commands
    std::string file;
    double weight_scale = 2.0;
    double tolerance = kCertifyTolerance;
    std::string to;
    bool json = false;
};

std::string sci(double v, int digits = 2)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*e", digits, v);
    return buf;
}

const char* yes_no(bool b)
{
    return b ? "yes" : "no";
}

ordered_json report_json(const QuadratureRule& rule, const CertificationReport& r)
{
    ordered_json j;
    j["strength"] = r.strength;
    j["max_error"] = r.max_error;
    j["positive_weights"] = r.positive_weights;
    j["all_interior"] = r.all_interior;
    j["symmetry"] = to_string(r.symmetry);
    j["n_points"] = rule.size();
    if (rule.cardinal_degree)
        j["d"] = *rule.cardinal_degree;
    else
        j["d"] = nullptr;
    return j;
}

std::string report_line(const QuadratureRule& rule, const CertificationReport& r)
{
    std::string s = "strength=" + std::to_string(r.strength) + " max_error=" + sci(r.max_error)
                    + " positive=" + yes_no(r.positive_weights) + " interior="
                    + yes_no(r.all_interior) + " sym=" + to_string(r.symmetry)
                    + " n_points=" + std::to_string(rule.size());
    if (rule.cardinal_degree)
        s += " d=" + std::to_string(*rule.cardinal_degree);
    return s;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f)
        throw Error(ErrorKind::io_error, "cannot write " + path);
}

ParsedRule load(const Options& o, std::ostream& err)
{
    ParseOptions popt;
    popt.weight_scale = o.weight_scale;
    ParsedRule parsed = read_rule_file(o.file, popt);
    for (const auto& w : parsed.warnings)
        err << "triquad: warning: " << o.file << ": " << w << "\n";
    return parsed;
}

int cmd_generate(const Options& o, std::ostream& out, std::ostream& err)
{
    OptimizerConfig cfg;
    cfg.target_e = o.e ? *o.e : default_target_e(o.d);
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    cfg.threads = o.threads;
    cfg.verbose = o.verbose;

    const OptimizeResult res = optimize(o.d, cfg);
    for (const auto& w : res.warnings)
        err << "triquad: warning: " << w << "\n";

    const int target = o.d + cfg.target_e;
    if (res.status != OptimizeStatus::converged)
    {
        err << "triquad: error: unconverged: d=" << o.d << " target strength " << target
            << ", best max residual " << sci(res.best_residual) << " after " << res.restarts_run
            << " restarts\n";
        return kExitShortfall;
    }

    write_text(o.out_file, emit_rule(res.rule), out);
    if (!o.registry.empty())
    {
        const auto path = RuleRegistry(o.registry).store(res.rule);
        err << "triquad: stored " << path.string() << "\n";
    }

    // The summary goes to stdout only when stdout is not carrying the rule.
    std::ostream& summary = o.out_file.empty() || o.out_file == "-" ? err : out;
    if (o.json)
    {
        ordered_json j = report_json(res.rule, res.report);
        j["restarts_run"] = res.restarts_run;
        j["chosen_restart"] = res.chosen_restart;
        summary << j.dump() << "\n";
    }
    else
        summary << report_line(res.rule, res.report) << " restarts=" << res.restarts_run << "\n";
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err)
{
    const ParsedRule parsed = load(o, err);
    const CertificationReport r = certify(parsed.rule, o.tolerance);
    const auto& claim = parsed.rule.metadata.claimed_strength;

    if (o.json)
    {
        ordered_json j = report_json(parsed.rule, r);
        j["claimed_strength"] = claim ? ordered_json(*claim) : ordered_json(nullptr);
        out << j.dump() << "\n";
    }
    else
        out << report_line(parsed.rule, r) << "\n";

    if (claim && r.strength < *claim)
    {
        err << "triquad: error: " << o.file << ": certified strength " << r.strength
            << " is below the claimed " << *claim << "\n";
        return kExitShortfall;
    }
    return kExitOk;
}

int cmd_weights(const Options& o, std::ostream& out, std::ostream& err)
{
    const ParsedRule parsed = load(o, err);
    const QuadratureRule rule = make_cardinal_rule(o.d, parsed.rule.points);
    write_text(o.out_file, emit_rule(rule), out);
    return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out)
{
    const int n = basis_dimension(o.d);
    if (o.json)
    {
        ordered_json j;
        j["d"] = o.d;
        j["n_points"] = n;
        j["equations_budget"] = 3 * n;
        j["max_degree"] = dof_bound(o.d);
        out << j.dump() << "\n";
    }
    else
        out << "N=" << n << " 3N=" << 3 * n << " max_degree=" << dof_bound(o.d) << "\n";
    return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err)
{
    const RuleRegistry reg(o.table_registry);
    const auto entries = reg.entries();
    if (entries.empty())
    {
        err << "triquad: error: no rules in " << o.table_registry << "\n";
        return kExitError;
    }

    ordered_json rows = ordered_json::array();
    char line[160];
    if (!o.json)
    {
        std::snprintf(line, sizeof line, "%4s %5s %9s %10s  %-6s %-22s %s\n", "d", "N", "strength",
                      "max_error", "notes", "file", "digest");
        out << line;
    }
    int bad = 0;
    for (const auto& e : entries)
    {
        const bool intact = reg.digest_matches(e);
        bad += !intact;
        std::string notes, error = "-";
        if (intact)
        {
            const QuadratureRule rule = reg.load(e);
            if (rule.metadata.symmetry)
                notes = *rule.metadata.symmetry == Symmetry::asymmetric ? "asym" : "";
            if (rule.metadata.certified_error)
                error = sci(*rule.metadata.certified_error, 1);
        }
        if (o.json)
        {
            ordered_json j;
            j["d"] = e.cardinal_degree;
            j["n_points"] = e.n_points;
            j["strength"] = e.strength;
            j["file"] = e.file;
            j["digest_ok"] = intact;
            j["asym"] = notes == "asym";
            rows.push_back(j);
        }
        else
        {
            std::snprintf(line, sizeof line, "%4d %5d %9d %10s  %-6s %-22s %s\n", e.cardinal_degree,
                          e.n_points, e.strength, error.c_str(), notes.c_str(), e.file.c_str(),
                          intact ? "ok" : "MISMATCH");
            out << line;
        }
    }
    if (o.json)
        out << rows.dump() << "\n";
    if (bad)
    {
        err << "triquad: error: " << bad << " registry file(s) do not match their digest\n";
        return kExitError;
    }
    return kExitOk;
}

int cmd_plot(const Options& o, std::ostream& out, std::ostream& err)
{
    const ParsedRule parsed = load(o, err);
    write_text(o.out_file, plot_rule(parsed.rule), out);
    return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out, std::ostream& err)
{
    const CoordinateSystem target = parse_coordinate_system(o.to);
    const ParsedRule parsed = load(o, err);
    write_text(o.out_file, convert_rule(parsed.rule, target), out);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Cardinal quadrature rules on the triangle", "triquad"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto add_weight_scale = [&](CLI::App* sub) {
        sub->add_option("--weight-scale", o.weight_scale,
                        "Internal weight = file weight * scale (default 2: file weights sum to 1)")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* generate = app.add_subcommand("generate", "Optimize an N = dim P_d point rule");
    generate->add_option("--d", o.d, "Cardinal degree d")->required()->check(CLI::Range(1, 30));
    generate->add_option("--e", o.e, "Extra degrees (default: the degrees-of-freedom bound)")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--seed", o.seed, "Random seed");
    generate->add_option("--restarts", o.restarts, "Restart budget (default 50, or 500 for d > 5)")
        ->check(CLI::NonNegativeNumber);
    generate->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    generate->add_option("--out", o.out_file, "Output rule file (default stdout)");
    generate->add_option("--registry", o.registry, "Also store the rule in this registry");
    generate->add_flag("--json", o.json, "Machine-readable summary");
    generate->add_flag("--verbose", o.verbose, "Per-restart progress on stderr");

    CLI::App* verify = app.add_subcommand("verify", "Certify the strength of a rule file");
    verify->add_option("file", o.file, "Rule file")->required();
    verify->add_option("--tolerance", o.tolerance, "Certification tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--json", o.json, "Machine-readable report");
    add_weight_scale(verify);

    CLI::App* weights = app.add_subcommand("weights", "Recompute Newton-Cotes weights");
    weights->add_option("file", o.file, "Rule file")->required();
    weights->add_option("--d", o.d, "Cardinal degree")->required()->check(CLI::Range(0, 30));
    weights->add_option("--out", o.out_file, "Output rule file (default stdout)");
    add_weight_scale(weights);

    CLI::App* bound = app.add_subcommand("bound", "Degrees-of-freedom bound for d");
    bound->add_option("--d", o.d, "Cardinal degree")->required()->check(CLI::Range(0, 1000));
    bound->add_flag("--json", o.json, "Machine-readable output");

    CLI::App* table = app.add_subcommand("table", "Summarize a rule registry");
    table->add_option("--registry", o.table_registry, "Registry directory (default data/rules)");
    table->add_flag("--json", o.json, "Machine-readable output");

    CLI::App* plot = app.add_subcommand("plot", "Render a rule as SVG");
    plot->add_option("file", o.file, "Rule file")->required();
    plot->add_option("--out", o.out_file, "SVG file (default stdout)");
    add_weight_scale(plot);

    CLI::App* convert = app.add_subcommand("convert", "Rewrite a rule in other coordinates");
    convert->add_option("file", o.file, "Rule file")->required();
    convert->add_option("--to", o.to, "barycentric, reference or unit")
        ->required()
        ->check(CLI::IsMember({"barycentric", "reference", "unit"}));
    convert->add_option("--out", o.out_file, "Output file (default stdout)");
    add_weight_scale(convert);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        err << "triquad: error: " << e.what() << "\n";
        return kExitError;
    }

    try
    {
        if (generate->parsed())
            return cmd_generate(o, out, err);
        if (verify->parsed())
            return cmd_verify(o, out, err);
        if (weights->parsed())
            return cmd_weights(o, out, err);
        if (bound->parsed())
            return cmd_bound(o, out);
        if (table->parsed())
            return cmd_table(o, out, err);
        if (plot->parsed())
            return cmd_plot(o, out, err);
        if (convert->parsed())
            return cmd_convert(o, out, err);
    }
    catch (const Error& e)
    {
        err << "triquad: error: " << e.what() << "\n";
        return e.kind() == ErrorKind::oracle_disagreement ? kExitDisagreement : kExitError;
    }
    catch (const std::exception& e)
    {
        err << "triquad: error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace triquad::cli
