#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace centrolab {

enum class ErrorKind {
    invalid_input,
    domain,
    not_closed,
    not_star_shaped,
    wrong_orientation,
    convexity_violation,
    normalization,
    conic_degenerate,
    no_orbit,
    bracketing,
    unreachable,
    closure_defect,
    not_critical,
    pole,
    off_spectrum,
    branch_unavailable,
    non_liftable,
    margin,
    integration_failure,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `location` carries the offending
/// sample index or parameter value when one exists.
class LabError : public std::runtime_error {
public:
    LabError(ErrorKind kind, const std::string& message,
             std::optional<double> location = std::nullopt)
        : std::runtime_error(message), kind_(kind), location_(location) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<double> location() const noexcept { return location_; }

private:
    ErrorKind kind_;
    std::optional<double> location_;
};

}  // namespace centrolab
