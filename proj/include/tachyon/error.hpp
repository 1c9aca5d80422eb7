#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tachyon {

// Every failure the library can signal. The CLI maps each code to its own
// exit status, so append new codes at the end.
enum class ErrorCode {
    InvalidArgument,
    ZeroModeExcluded,
    EvanescentModeExcluded,
    EmptyModeSet,
    GridMismatch,
    LightConeSingular,
    NonConvergent,
    InsufficientResolution,
    DimensionOverflow,
    InvalidMode,
    SpeciesUnavailable,
    NotCharged,
    OnCutPlane,
    SpectrumForbiddenLeg,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace tachyon
