#pragma once

#include <stdexcept>
#include <string>

namespace classlim {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature failed to reach the requested relative tolerance.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what + " (achieved relative tolerance " + std::to_string(achieved) + ")"),
          achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

// A divergence or rate is undefined for the given inputs (e.g. non-positive KL estimates).
class UndefinedDistanceError : public Error {
public:
    using Error::Error;
};

// Too few rows/points to run an estimator or fit.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Confusion matrix with p_e = 1 and p_0 < 1.
class DegenerateMatrixError : public Error {
public:
    using Error::Error;
};

// Requested class fraction cannot be reached by subsampling one class.
class InfeasibleImbalanceError : public Error {
public:
    using Error::Error;
};

// Iterative optimiser stopped above its gradient tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double grad_norm)
        : Error(what + " (final gradient norm " + std::to_string(grad_norm) + ")"),
          final_gradient_norm(grad_norm) {}
    double final_gradient_norm;
};

// Dataset file could not be parsed into a valid two-class table.
class LoadError : public Error {
public:
    using Error::Error;
};

} // namespace classlim
