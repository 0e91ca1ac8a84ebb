#include "triquad/rule_io.hpp"

#include "triquad/error.hpp"
#include "triquad/ortho_basis.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace triquad {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what)
{
    throw Error(ErrorKind::parse_error, "line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& token, int line)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        fail_line(line, "not a finite number: '" + token + "'");
    return v;
}

int parse_int(std::string_view value, int line, std::string_view key)
{
    const std::string s(value);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0')
        fail_line(line, "bad integer for " + std::string(key) + ": '" + s + "'");
    return static_cast<int>(v);
}

void apply_header(QuadratureRule& rule, std::string_view body, int line)
{
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
        return;
    const std::string_view key = trim(body.substr(0, colon));
    const std::string_view value = trim(body.substr(colon + 1));

    if (key == "cardinal_degree")
        rule.cardinal_degree = parse_int(value, line, key);
    else if (key == "strength")
        rule.metadata.claimed_strength = parse_int(value, line, key);
    else if (key == "max_error")
        rule.metadata.certified_error = parse_number(std::string(value), line);
    else if (key == "symmetry")
    {
        if (value == "d3_symmetric")
            rule.metadata.symmetry = Symmetry::d3_symmetric;
        else if (value == "asymmetric")
            rule.metadata.symmetry = Symmetry::asymmetric;
    }
    else if (key == "generator")
        rule.metadata.generator = std::string(value);
    else if (key == "seed")
        rule.metadata.seed = std::strtoull(std::string(value).c_str(), nullptr, 10);
    else if (key == "created")
        rule.metadata.created = std::string(value);
}

} // namespace

std::string format_real(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

ParsedRule parse_rule_text(std::string_view text, const ParseOptions& options)
{
    ParsedRule out;
    QuadratureRule& rule = out.rule;
    std::vector<double> file_weights;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty())
            continue;
        if (line.front() == '#')
        {
            apply_header(rule, line.substr(1), line_no);
            continue;
        }

        std::istringstream fields{std::string(line)};
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;)
            tokens.push_back(tok);
        if (tokens.size() != 3)
            fail_line(line_no, "expected 3 fields (b1 b2 w), found " + std::to_string(tokens.size()));

        const BarycentricPoint b{parse_number(tokens[0], line_no), parse_number(tokens[1], line_no)};
        const double w = parse_number(tokens[2], line_no);
        const TrianglePoint p = from_barycentric(b);
        if (!p.is_inside())
            out.warnings.push_back("line " + std::to_string(line_no)
                                   + ": point lies outside the triangle");
        rule.points.push_back(p);
        file_weights.push_back(w);
    }

    if (rule.points.empty())
        throw Error(ErrorKind::parse_error, "no quadrature points found");

    double sum = 0.0;
    for (double w : file_weights)
        sum += w;
    const double expected = 2.0 / options.weight_scale;
    if (!(std::abs(sum - expected) <= 1e-10 * std::abs(expected)))
        throw Error(ErrorKind::parse_error,
                    "weights sum to " + format_real(sum) + ", expected " + format_real(expected));

    rule.weights.reserve(file_weights.size());
    for (double w : file_weights)
        rule.weights.push_back(w * options.weight_scale);

    const int n = static_cast<int>(rule.points.size());
    if (!rule.cardinal_degree)
    {
        for (int d = 0; basis_dimension(d) <= n; ++d)
            if (basis_dimension(d) == n)
                rule.cardinal_degree = d;
    }
    return out;
}

QuadratureRule parse_rule(std::string_view text, const ParseOptions& options)
{
    return parse_rule_text(text, options).rule;
}

std::string emit_rule(const QuadratureRule& rule)
{
    std::ostringstream os;
    os << "# triquad quadrature rule\n";
    os << "# format: b1 b2 w (barycentric, b3 = 1 - b1 - b2; weights sum to 1)\n";
    if (rule.cardinal_degree)
        os << "# cardinal_degree: " << *rule.cardinal_degree << "\n";
    os << "# n_points: " << rule.size() << "\n";
    if (rule.certified_strength)
        os << "# strength: " << *rule.certified_strength << "\n";
    else if (rule.metadata.claimed_strength)
        os << "# strength: " << *rule.metadata.claimed_strength << "\n";
    if (rule.metadata.certified_error)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2e", *rule.metadata.certified_error);
        os << "# max_error: " << buf << "\n";
    }
    if (rule.metadata.symmetry)
        os << "# symmetry: " << to_string(*rule.metadata.symmetry) << "\n";
    if (!rule.metadata.generator.empty())
        os << "# generator: " << rule.metadata.generator << "\n";
    if (rule.metadata.seed)
        os << "# seed: " << *rule.metadata.seed << "\n";
    if (!rule.metadata.created.empty())
        os << "# created: " << rule.metadata.created << "\n";

    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        const BarycentricPoint b = to_barycentric(rule.points[i]);
        os << format_real(b.b1) << ' ' << format_real(b.b2) << ' '
           << format_real(0.5 * rule.weights[i]) << '\n';
    }
    return os.str();
}

ParsedRule read_rule_file(const std::filesystem::path& path, const ParseOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_rule_text(buf.str(), options);
    }
    catch (const Error& err)
    {
        throw Error(err.kind(), path.string() + ": " + err.what());
    }
}

void write_rule_file(const std::filesystem::path& path, const QuadratureRule& rule)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io_error, "cannot write " + path.string());
    out << emit_rule(rule);
    if (!out)
        throw Error(ErrorKind::io_error, "write failed: " + path.string());
}

CoordinateSystem parse_coordinate_system(std::string_view name)
{
    if (name == "barycentric")
        return CoordinateSystem::barycentric;
    if (name == "reference")
        return CoordinateSystem::reference;
    if (name == "unit")
        return CoordinateSystem::unit;
    throw Error(ErrorKind::invalid_argument,
                "unknown coordinate system '" + std::string(name)
                    + "' (expected barycentric, reference or unit)");
}

std::string convert_rule(const QuadratureRule& rule, CoordinateSystem target)
{
    std::ostringstream os;
    switch (target)
    {
        case CoordinateSystem::barycentric:
            os << "# b1 b2 b3 w (weights sum to 1)\n";
            break;
        case CoordinateSystem::reference:
            os << "# xi1 xi2 w (reference triangle, weights sum to 2)\n";
            break;
        case CoordinateSystem::unit:
            os << "# x y w (unit right triangle, weights sum to 1/2)\n";
            break;
    }
    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        const TrianglePoint& p = rule.points[i];
        const double w = rule.weights[i];
        switch (target)
        {
            case CoordinateSystem::barycentric:
            {
                const auto t = barycentric_triple(p);
                os << format_real(t[0]) << ' ' << format_real(t[1]) << ' ' << format_real(t[2])
                   << ' ' << format_real(0.5 * w) << '\n';
                break;
            }
            case CoordinateSystem::reference:
                os << format_real(p.xi1) << ' ' << format_real(p.xi2) << ' ' << format_real(w)
                   << '\n';
                break;
            case CoordinateSystem::unit:
            {
                const BarycentricPoint b = to_barycentric(p);
                os << format_real(b.b1) << ' ' << format_real(b.b2) << ' ' << format_real(0.25 * w)
                   << '\n';
                break;
            }
        }
    }
    return os.str();
}

} // namespace triquad
