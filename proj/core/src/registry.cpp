#include "triquad/registry.hpp"

#include "triquad/error.hpp"
#include "triquad/rule_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <tuple>

namespace triquad {

namespace {

constexpr const char* kIndexName = "index.txt";

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1
        || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw Error(ErrorKind::io_error, "sha256 failed");

    std::string hex;
    hex.reserve(2 * len);
    char byte[3];
    for (unsigned int i = 0; i < len; ++i)
    {
        std::snprintf(byte, sizeof byte, "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

std::string rule_file_name(int cardinal_degree, int strength)
{
    return "tri_d" + std::to_string(cardinal_degree) + "_s" + std::to_string(strength) + ".txt";
}

RuleRegistry::RuleRegistry(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path RuleRegistry::store(const QuadratureRule& rule)
{
    if (!rule.is_cardinal() || !rule.certified_strength)
        throw Error(ErrorKind::invalid_argument, "registry stores certified cardinal rules only");

    std::filesystem::create_directories(dir_);
    const std::string text = emit_rule(rule);
    const std::string name = rule_file_name(*rule.cardinal_degree, *rule.certified_strength);
    const auto path = dir_ / name;
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out)
            throw Error(ErrorKind::io_error, "cannot write " + path.string());
    }

    auto list = entries();
    std::erase_if(list, [&](const RegistryEntry& e) { return e.file == name; });
    list.push_back({name, *rule.cardinal_degree, static_cast<int>(rule.size()),
                    *rule.certified_strength, sha256_hex(text)});
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        return std::tie(a.cardinal_degree, a.strength, a.file)
               < std::tie(b.cardinal_degree, b.strength, b.file);
    });
    write_index(list);
    return path;
}

std::vector<RegistryEntry> RuleRegistry::entries() const
{
    std::vector<RegistryEntry> out;
    const auto index = dir_ / kIndexName;
    if (!std::filesystem::exists(index))
        return out;

    std::istringstream in(slurp(index));
    int line_no = 0;
    for (std::string line; std::getline(in, line);)
    {
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream fields(line);
        RegistryEntry e;
        if (!(fields >> e.file >> e.cardinal_degree >> e.n_points >> e.strength >> e.digest))
            throw Error(ErrorKind::parse_error,
                        index.string() + ": line " + std::to_string(line_no) + ": malformed entry");
        out.push_back(std::move(e));
    }
    return out;
}

bool RuleRegistry::digest_matches(const RegistryEntry& entry) const
{
    const auto path = dir_ / entry.file;
    if (!std::filesystem::exists(path))
        return false;
    return sha256_hex(slurp(path)) == entry.digest;
}

QuadratureRule RuleRegistry::load(const RegistryEntry& entry) const
{
    return read_rule_file(dir_ / entry.file).rule;
}

void RuleRegistry::write_index(const std::vector<RegistryEntry>& list) const
{
    const auto path = dir_ / kIndexName;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "# file d N strength sha256\n";
    for (const auto& e : list)
        out << e.file << ' ' << e.cardinal_degree << ' ' << e.n_points << ' ' << e.strength << ' '
            << e.digest << '\n';
    if (!out)
        throw Error(ErrorKind::io_error, "cannot write " + path.string());
}

} // namespace triquad
