#pragma once

#include <stdexcept>
#include <string>

namespace charpoly {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Matrix or problem size beyond what an operation supports.
struct SizeError : Error {
    using Error::Error;
};

// A numerical procedure failed to reach its accuracy target.
struct AccuracyError : Error {
    using Error::Error;
};

// Sigma-form branch degeneracy (negative discriminant) at location t.
struct BranchError : Error {
    BranchError(const std::string& what, double t) : Error(what), t(t) {}
    double t;
};

struct StiffnessError : Error {
    StiffnessError(const std::string& what, double t) : Error(what), t(t) {}
    double t;
};

struct UnderflowError : Error {
    using Error::Error;
};

// Evaluation requested outside the span of a computed solution.
struct ExtrapolationError : Error {
    using Error::Error;
};

}  // namespace charpoly
