#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vortexlab {

// Every failure raised by the library carries a stable machine-readable code
// and an optional JSON payload (solver trace, bracket history, ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, std::string details = "null")
        : std::runtime_error(message), code_(std::move(code)), details_(std::move(details)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& details() const noexcept { return details_; }

private:
    std::string code_;
    std::string details_;
};

namespace errc {
inline constexpr const char* invalid_argument = "invalid_argument";
inline constexpr const char* domain = "domain_error";
inline constexpr const char* nonconforming_potential = "nonconforming_potential";
inline constexpr const char* nonconvergence = "nonconvergence";
inline constexpr const char* eigensolver = "eigensolver_failure";
inline constexpr const char* no_threshold = "no_threshold";
inline constexpr const char* bracket = "bracket_error";
inline constexpr const char* out_of_range = "out_of_range";
inline constexpr const char* no_escaping_region = "no_escaping_region";
inline constexpr const char* inconsistent = "inconsistent";
inline constexpr const char* grid_mismatch = "grid_mismatch";
inline constexpr const char* invalid_lambda = "invalid_lambda";
inline constexpr const char* unconverged = "unconverged_profile";
} // namespace errc

} // namespace vortexlab
