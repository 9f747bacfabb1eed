#pragma once

#include <stdexcept>
#include <string>

namespace pfv {

/// Broad failure classes. The CLI maps them onto process exit codes.
enum class ErrorKind {
    usage,       ///< malformed input or violated precondition
    capacity,    ///< request exceeds a configured resource limit
    hypothesis,  ///< input violates a mathematical hypothesis (fixed k-th power divisor, repeated factor)
    domain,      ///< query outside the computed range
    internal     ///< certification failure: a computed result did not re-verify
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(ErrorKind::capacity, what) {}
};

class HypothesisError : public Error {
public:
    explicit HypothesisError(const std::string& what) : Error(ErrorKind::hypothesis, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorKind::internal, what) {}
};

}  // namespace pfv
