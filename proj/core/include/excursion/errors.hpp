#pragma once

#include <stdexcept>
#include <string>

namespace excursion {

/// Malformed or out-of-contract input (non-finite samples, bad epsilon, bad flags).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The signal carries no measurable variation (constant, or below the numerical floor).
class DegenerateSignal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulated trajectory left the finite range.
class SimulationDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure in a key=value config file; carries the 1-based line number (0 if not line-bound).
class ConfigError : public InputError {
public:
    ConfigError(const std::string& message, int line = 0)
        : InputError(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace excursion
