#ifndef TRIQUAD_RULE_IO_HPP
#define TRIQUAD_RULE_IO_HPP

#include "triquad/rule.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace triquad {

// Rule file format
// ----------------
// Plain text, one point per line:
//
//     b1 b2 w
//
// b1, b2 are the first two barycentric coordinates (equivalently x, y in the
// unit right triangle; b3 = 1 - b1 - b2) and w is the weight, normalized so
// the weights of a file sum to 1. Fields are written with 17 significant
// digits. Lines starting with '#' are comments; comments of the form
// "# key: value" carry metadata:
//
//     cardinal_degree, n_points, strength, max_error, symmetry, generator,
//     seed, created
//
// Internally weights are multiplied by 2, the area of the reference
// triangle. A plain "x y w" file with no header is read the same way.

struct ParseOptions
{
    // Internal weight = file weight * weight_scale. The file weights must sum
    // to 2 / weight_scale within 1e-10 (relative).
    double weight_scale = 2.0;
};

struct ParsedRule
{
    QuadratureRule rule;
    // Non-fatal findings, e.g. points outside the triangle.
    std::vector<std::string> warnings;
};

/// Throws Error(parse_error) naming the offending line.
ParsedRule parse_rule_text(std::string_view text, const ParseOptions& options = {});

QuadratureRule parse_rule(std::string_view text, const ParseOptions& options = {});

std::string emit_rule(const QuadratureRule& rule);

ParsedRule read_rule_file(const std::filesystem::path& path, const ParseOptions& options = {});
void write_rule_file(const std::filesystem::path& path, const QuadratureRule& rule);

enum class CoordinateSystem
{
    barycentric, // b1 b2 b3 w, weights sum to 1
    reference,   // xi1 xi2 w on the reference triangle, weights sum to 2
    unit,        // x y w on the unit right triangle, weights sum to 1/2
};

/// Parses "barycentric", "reference" or "unit"; throws Error(invalid_argument).
CoordinateSystem parse_coordinate_system(std::string_view name);

std::string convert_rule(const QuadratureRule& rule, CoordinateSystem target);

// "%.16e", i.e. 17 significant digits.
std::string format_real(double value);

} // namespace triquad

#endif // TRIQUAD_RULE_IO_HPP
