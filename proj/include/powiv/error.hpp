#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace powiv {

enum class ErrorCode {
    InvalidArgument,
    NonPositiveTau,
    MissingSigma,
    NoBracket,
    MaxIterations,
    UnsupportedFormat,
    InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a classified failure. Everything the library throws on
/// a contract violation is one of these.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace powiv
