#pragma once

#include <stdexcept>
#include <string>

namespace trimode {

// Bad laboratory/effective parameters or malformed config.
struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Model assumptions violated (e.g. bosonic approximation breaks down).
struct ValidityError : std::domain_error {
    explicit ValidityError(const std::string& msg) : std::domain_error(msg) {}
};

// Solver failures: no admissible root, eigen non-convergence, step underflow.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// No stable semiclassical branch at the requested drive.
struct UnstableWorkingPoint : std::runtime_error {
    explicit UnstableWorkingPoint(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace trimode
