#ifndef TRIQUAD_ERROR_HPP
#define TRIQUAD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace triquad {

enum class ErrorKind
{
    degenerate_configuration,
    oracle_disagreement,
    unconverged,
    all_restarts_degenerate,
    parse_error,
    invalid_argument,
    io_error,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace triquad

#endif // TRIQUAD_ERROR_HPP
