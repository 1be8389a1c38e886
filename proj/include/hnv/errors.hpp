#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hnv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A coordinate sits on (or numerically indistinguishable from) the real axis.
class InvalidPoint : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class PoleError : public Error {
public:
    using Error::Error;
};

class InvalidMeasure : public Error {
public:
    using Error::Error;
};

class InvalidTestFunction : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Quadrature did not reach the requested tolerance. Carries the best estimate.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, std::complex<double> estimate, double error)
        : Error(what), estimate_(estimate), error_(error) {}

    std::complex<double> estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    std::complex<double> estimate_;
    double error_;
};

/// The integrand does not decay fast enough for the integral to exist.
class DivergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace hnv
