#pragma once

#include <stdexcept>
#include <string>

namespace mertens {

// Base of every error thrown by the library. The CLI maps all of these
// (except VerificationError) to exit status 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A query beyond the sieved range (never silently truncated).
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

// Work or memory above a configured budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Result would not meet its documented accuracy.
class AccuracyError : public Error {
public:
    using Error::Error;
};

// Bad magic or version in a prime cache file.
class FormatError : public Error {
public:
    using Error::Error;
};

// Truncated or inconsistent prime cache file.
class CorruptionError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace mertens
