#pragma once

#include <stdexcept>
#include <string>

namespace hasse {

// Caller passed arguments outside an operation's accepted shape (even modulus,
// zero discriminant, mismatched forms...). Maps to CLI exit code 3.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments are well formed but violate a mathematical precondition
// (nonresidue passed to a square root, inert prime, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A local solvability search hit its depth bound without a verdict.
class UndecidedError : public std::runtime_error {
public:
    UndecidedError(const std::string& what, std::string place)
        : std::runtime_error(what), place_(std::move(place)) {}
    const std::string& place() const noexcept { return place_; }

private:
    std::string place_;
};

// An identity or cross-check that must hold did not. Indicates a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hasse
