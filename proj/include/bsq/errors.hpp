// Error taxonomy shared by all modules.
//
// Every failure is classified so the CLI can map it to a stable exit code:
//   ValidationError -> 2  (bad input, domain violation, contract breach)
//   StabilityError  -> 3  (numerical instability: blowup, stiffness, budget)
//   AssumptionError -> 4  (a checked mathematical assumption failed)
#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

/// Base class carrying the CLI exit code for this failure class.
class Error : public std::runtime_error {
public:
    Error(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Invalid input or violated precondition (exit code 2).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg, 2) {}
};

/// Numerical-stability failure: blowup, step-size underflow, exhausted
/// budget (exit code 3).
class StabilityError : public Error {
public:
    explicit StabilityError(const std::string& msg) : Error(msg, 3) {}
};

/// A mathematical assumption check failed (exit code 4).
class AssumptionError : public Error {
public:
    explicit AssumptionError(const std::string& msg) : Error(msg, 4) {}
};

} // namespace bsq
