// errors.hpp — Exception types shared by all berrydeco modules

#pragma once

#include <stdexcept>
#include <string>

namespace berrydeco {

// Argument outside the mathematical domain of an operation (negative frequency, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature or step-size check failed; carries the estimated error.
struct NumericalAccuracyError : std::runtime_error {
    NumericalAccuracyError(const std::string& what, double estimate)
        : std::runtime_error(what), error_estimate(estimate) {}
    double error_estimate;
};

// Time grid too coarse for the oscillation or correlation scales it must resolve.
struct ResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rotating-frame gap E vanishes; the frame angles are undefined.
struct DegenerateFrameError : std::domain_error {
    using std::domain_error::domain_error;
};

// Field loop is open, or passes through a pole where phi is undefined.
struct PathError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace berrydeco
