#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace domcone {

/// Machine-readable failure categories. The CLI reports these verbatim.
enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    numerical_failure,
    singular_map,
    non_proper_set,
    non_monotone_set,
    aperture_inconsistent,
    aperture_mismatch,
    precondition,
    malformed_input,
    io_failure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::singular_map: return "singular_map";
    case ErrorCode::non_proper_set: return "non_proper_set";
    case ErrorCode::non_monotone_set: return "non_monotone_set";
    case ErrorCode::aperture_inconsistent: return "aperture_inconsistent";
    case ErrorCode::aperture_mismatch: return "aperture_mismatch";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::malformed_input: return "malformed_input";
    case ErrorCode::io_failure: return "io_failure";
    }
    return "unknown";
}

} // namespace domcone
