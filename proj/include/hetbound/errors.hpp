#pragma once

#include <stdexcept>
#include <string>

namespace hetbound {

/// Point outside the admissible region of a model (x >= x_max, y <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A structural assumption of the bound or the Lyapunov construction fails.
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root finder, integrator or series iteration did not reach tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hetbound
