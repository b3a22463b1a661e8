#pragma once

#include <stdexcept>
#include <string>

namespace curv4 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad call arguments (index out of range, non-unit direction, ...).
struct ArgumentError : Error {
    using Error::Error;
};

/// Jet evaluation too close to a singular value of div/log/sqrt/abs.
struct DomainError : Error {
    using Error::Error;
};

/// Metric degenerate or not positive definite at the requested point.
struct GeometryError : Error {
    using Error::Error;
};

/// Adaptive ODE integration failed (step underflow near a singularity).
struct IntegrationError : Error {
    using Error::Error;
};

/// Family constraints violated while building a catalog chart.
struct ConstructionError : Error {
    using Error::Error;
};

/// Internal cross-check failed (e.g. LCF and Q satisfied but P violated).
struct ConsistencyError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace curv4
