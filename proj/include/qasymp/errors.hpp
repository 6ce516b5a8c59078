#pragma once

#include <stdexcept>
#include <string>

namespace qasymp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An infinite sum/product did not meet its tail certificate within max_terms.
struct NonConvergent : Error {
    using Error::Error;
};

// A lemma/theorem hypothesis fails at the requested parameters.
struct HypothesisViolated : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// q-Gamma at a non-positive integer.
struct PoleError : Error {
    using Error::Error;
};

// Principal power of zero with non-integer exponent.
struct BranchError : Error {
    using Error::Error;
};

// Two independent evaluation routes disagree beyond their combined
// truncation certificates. Signals a numerics bug, not a math fact.
struct InternalDisagreement : Error {
    using Error::Error;
};

struct QuadratureNotConverged : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qasymp
