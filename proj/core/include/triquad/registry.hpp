#ifndef TRIQUAD_REGISTRY_HPP
#define TRIQUAD_REGISTRY_HPP

#include "triquad/rule.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace triquad {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// "tri_d<d>_s<strength>.txt"
std::string rule_file_name(int cardinal_degree, int strength);

struct RegistryEntry
{
    std::string file;
    int cardinal_degree = 0;
    int n_points = 0;
    int strength = 0;
    std::string digest;
};

/// A directory of rule files plus "index.txt", one line per rule:
///
///     <file> <d> <N> <strength> <sha256 of the file contents>
///
/// Single writer; concurrent readers are fine.
class RuleRegistry
{
public:
    explicit RuleRegistry(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }

    /// Writes the rule (which must be cardinal and certified) and replaces
    /// any index entry with the same file name. Returns the file path.
    std::filesystem::path store(const QuadratureRule& rule);

    /// Index entries sorted by (d, strength). Empty if there is no index.
    std::vector<RegistryEntry> entries() const;

    /// True when the file exists and its digest matches the index.
    bool digest_matches(const RegistryEntry& entry) const;

    QuadratureRule load(const RegistryEntry& entry) const;

private:
    void write_index(const std::vector<RegistryEntry>& entries) const;

    std::filesystem::path dir_;
};

} // namespace triquad

#endif // TRIQUAD_REGISTRY_HPP
