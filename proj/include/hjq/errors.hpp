#pragma once

#include <stdexcept>
#include <string>

namespace hjq {

// Base class for all errors raised by the analysis engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression text does not conform to the grammar. Carries the byte offset
// of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// An identifier in an expression does not resolve in the symbol table.
class UnknownIdentifierError : public Error {
public:
    UnknownIdentifierError(const std::string& name, std::size_t offset)
        : Error("unknown identifier '" + name + "' (at offset " + std::to_string(offset) + ")"),
          name_(name), offset_(offset) {}
    const std::string& name() const { return name_; }
    std::size_t offset() const { return offset_; }

private:
    std::string name_;
    std::size_t offset_;
};

class CyclicBindingError : public Error {
public:
    explicit CyclicBindingError(const std::string& msg) : Error(msg) {}
};

class NonlinearEquationError : public Error {
public:
    explicit NonlinearEquationError(const std::string& msg) : Error(msg) {}
};

class InconsistentSystemError : public Error {
public:
    explicit InconsistentSystemError(const std::string& msg) : Error(msg) {}
};

// A model whose momentum relations cannot be inverted by a linear solve.
class VelocitySolveError : public Error {
public:
    explicit VelocitySolveError(const std::string& msg) : Error(msg) {}
};

// An unexpressible velocity survived the cancellation that defines H_0 / H_mu.
class ResidualVelocityError : public Error {
public:
    explicit ResidualVelocityError(const std::string& msg) : Error(msg) {}
};

// Poisson bracket argument contains a velocity symbol.
class VelocityPresentError : public Error {
public:
    explicit VelocityPresentError(const std::string& msg) : Error(msg) {}
};

class NotIntegrableError : public Error {
public:
    explicit NotIntegrableError(const std::string& msg) : Error(msg) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Numeric evaluation hit a singularity (vanishing denominator, log of a
// non-positive value, sqrt of a negative value).
class SingularEvaluationError : public Error {
public:
    explicit SingularEvaluationError(const std::string& msg) : Error(msg) {}
};

class InitialDataError : public Error {
public:
    explicit InitialDataError(const std::string& msg) : Error(msg) {}
};

class EndpointMismatchError : public Error {
public:
    explicit EndpointMismatchError(const std::string& msg) : Error(msg) {}
};

class ModelFormatError : public Error {
public:
    explicit ModelFormatError(const std::string& msg) : Error(msg) {}
};

class UnknownModelError : public Error {
public:
    explicit UnknownModelError(const std::string& msg) : Error(msg) {}
};

} // namespace hjq
