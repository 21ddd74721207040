#pragma once

#include <stdexcept>

namespace shci {

/// Invalid configuration, shape mismatch or violated precondition.
/// The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite data or a numerical breakdown. The CLI maps it to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace shci
