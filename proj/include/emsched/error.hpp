#pragma once

#include <stdexcept>
#include <string>

namespace emsched {

enum class Errc {
    NonPositiveDuration,
    NegativeDemand,
    InvalidCores,
    CoreMipsMismatch,
    InvalidCapacity,
    InvalidPowerModel,
    UtilizationOutOfRange,
    ZeroPowerModel,
    ZeroCapacity,
    InfeasibleState,
    HeterogeneousFleet,
    MalformedLine,
    ConfigParseError,
    UnknownAlgorithm,
    InputDataError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace emsched
