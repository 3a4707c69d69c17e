#pragma once

#include <stdexcept>
#include <string>

namespace scalint {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (pole, bound, sign).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller misuse: mismatched grids, wrong potential kind, bad sizes.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the region where a tabulated quantity is known.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

/// A series or iteration did not converge; carries the last partial value.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double partial)
        : Error(what), partial_value(partial) {}
    double partial_value;
};

/// The superpotential bracket vanished, i.e. the partner potential would be singular.
class SingularityError : public Error {
public:
    SingularityError(const std::string& what, double at)
        : Error(what), location(at) {}
    double location;
};

/// The auxiliary Schroedinger solution has a zero on the grid.
class NodefulSolutionError : public Error {
public:
    NodefulSolutionError(const std::string& what, double at)
        : Error(what), location(at) {}
    double location;
};

/// Accumulated values left the representable floating-point range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Spectral design target inconsistent with the scaling map.
class DesignError : public Error {
public:
    enum class Kind { SameSign, Interval, NonPositive };
    DesignError(Kind k, const std::string& what) : Error(what), kind(k) {}
    Kind kind;
};

}  // namespace scalint
