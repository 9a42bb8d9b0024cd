#pragma once

#include <stdexcept>
#include <string>

namespace unirec {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit (non-square, mismatched product dimensions, wrong lengths).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (unnormalised vector, bad order, n = 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input is required to be unitary but is not; carries the measured defect.
class NotUnitaryError : public DomainError {
public:
    NotUnitaryError(const std::string& what, double defect)
        : DomainError(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

/// Decomposition factor chain is malformed (duplicate or missing orders).
class StructureError : public Error {
public:
    using Error::Error;
};

/// A documented precondition failed, typically division by a vanishing matrix element.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Internal numeric self-check failed; carries the offending residual.
class ConsistencyError : public Error {
public:
    ConsistencyError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace unirec
