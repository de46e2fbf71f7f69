// errors.hpp: Exception types shared by the pbgqsl library

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pbgqsl {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative time, NaN, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The result is mathematically defined but not representable in double.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a pole or branch point.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Coincident cubic roots; the partial-fraction form of b_t breaks down.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, double delta)
        : Error(what), delta_(delta) {}
    double delta() const noexcept { return delta_; }

private:
    double delta_;
};

/// A numerical procedure exhausted its refinement budget.
class PrecisionError : public Error {
public:
    PrecisionError(const std::string& what, std::complex<double> best, double error_estimate)
        : Error(what), best_(best), error_estimate_(error_estimate) {}
    std::complex<double> best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    std::complex<double> best_;
    double error_estimate_;
};

/// Invalid configuration (grid step, counts, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A map argument would not be contractive (|b| > 1).
class ContractivityError : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold (mixed "pure" state, P(0) != 1, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Rates of the time-local generator are undefined where b_t = 0.
class SingularRateError : public Error {
public:
    using Error::Error;
};

/// Dynamics that never move (integral of |dP/dt| vanishes).
class DegenerateEvolutionError : public Error {
public:
    using Error::Error;
};

} // namespace pbgqsl
