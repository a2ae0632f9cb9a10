#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace parlev {

/// Invalid numeric parameter (dimension, scale, regulator, domain).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Shape or symmetry-class mismatch between operands.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Adaptive quadrature failed to reach its tolerance. Carries the partial result.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::complex<double> partial, double error)
        : std::runtime_error(what), partial_(partial), error_(error) {}

    std::complex<double> partial() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_; }

private:
    std::complex<double> partial_;
    double error_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Least-squares calibration has nothing to fit against.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace parlev
