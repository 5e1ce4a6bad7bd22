#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace gstrand {

// Raised when an input violates an operation's precondition (non-antisymmetric
// matrix, zero spectral parameter, singular inertia, malformed config, ...).
// The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures that happen while a simulation is running. The CLI maps
// these to exit code 3. Carries the simulation time at which it occurred when
// one is known.
class RuntimeFailure : public std::runtime_error {
public:
    explicit RuntimeFailure(const std::string& what, std::optional<double> time = std::nullopt)
        : std::runtime_error(what), time_(time) {}

    std::optional<double> time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }
    virtual const char* kind() const noexcept { return "runtime"; }

private:
    std::optional<double> time_;
};

class BlowUpError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
    const char* kind() const noexcept override { return "blowup"; }
};

// Coincident peakons, or the exact collision instant X = 0.
class SingularConfigurationError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
    const char* kind() const noexcept override { return "singular_configuration"; }
};

class ConditioningError : public RuntimeFailure {
public:
    using RuntimeFailure::RuntimeFailure;
    const char* kind() const noexcept override { return "conditioning"; }
};

}  // namespace gstrand
