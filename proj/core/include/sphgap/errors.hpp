#pragma once

#include <stdexcept>
#include <string>

namespace sphgap {

/// Chart or metric degeneracy at a specific parameter point.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested quantity cannot be resolved at the current resolution.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite-difference step hit the cancellation noise floor.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid grid/manifold pairing or malformed run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sphgap
