#pragma once

#include <stdexcept>

namespace tpe {

// Error categories map to CLI exit codes: configuration/validation 2,
// numerical accuracy 3, integration horizon 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalAccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tpe
