#pragma once

#include <stdexcept>
#include <string>

namespace rydeph {

// Error categories. Each maps to one CLI exit code (see tools/).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double failure_time)
        : std::runtime_error(what), failure_time_(failure_time) {}

    // Time (s) at which the integrator gave up.
    double failure_time() const { return failure_time_; }

private:
    double failure_time_;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_integration = 3;
inline constexpr int exit_fit = 4;
inline constexpr int exit_domain = 5;

}
