#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thetacat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IncomposableError : public Error {
public:
    explicit IncomposableError(const std::string& what) : Error("incomposable: " + what) {}
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class WindowInsufficient : public Error {
public:
    explicit WindowInsufficient(const std::string& what) : Error("window insufficient: " + what) {}
};

/// A search hit its configured ceiling. `partial` is the number of results found so far.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t partial_count)
        : Error("budget exceeded: " + what), partial(partial_count) {}
    std::uint64_t partial;
};

/// The inductive union-of-faces construction met an intersection it cannot
/// express as a union of faces. Carries a human readable description of the data.
class ProofShapeViolation : public Error {
public:
    explicit ProofShapeViolation(const std::string& what) : Error("proof-shape violation: " + what) {}
};

} // namespace thetacat
