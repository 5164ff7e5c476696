#pragma once

#include <stdexcept>
#include <string>

namespace wedge32 {

// Invalid input to an operation (inverting zero, singular matrix, shape
// mismatch, element outside a group).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact arithmetic produced something structurally impossible: a nonzero
// element without an inverse, a Molien coefficient that is not a
// non-negative integer, a closure exceeding its bound. These always
// indicate a broken field tower or wrong generators and must abort.
struct ArithmeticError : std::runtime_error {
    explicit ArithmeticError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RadicalDependenceError : ArithmeticError {
    explicit RadicalDependenceError(const std::string& msg) : ArithmeticError(msg) {}
};

struct RunawayClosureError : ArithmeticError {
    explicit RunawayClosureError(const std::string& msg) : ArithmeticError(msg) {}
};

// Cache file unusable (bad magic, version mismatch, checksum failure).
struct CacheError : std::runtime_error {
    explicit CacheError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wedge32
