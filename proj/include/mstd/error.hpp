#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mstd {

enum class ErrorKind {
    empty_set,
    invalid_scale,
    parameter,
    capacity,
    domain,
    range,
    budget,
    parse,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::empty_set: return "empty_set";
    case ErrorKind::invalid_scale: return "invalid_scale";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::domain: return "domain";
    case ErrorKind::range: return "range";
    case ErrorKind::budget: return "budget";
    case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

/// Every library failure carries the originating module name so the CLI can
/// report {error, module, detail} without guessing.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& detail)
        : std::runtime_error(detail), kind_(kind), module_(std::move(module))
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

}  // namespace mstd
