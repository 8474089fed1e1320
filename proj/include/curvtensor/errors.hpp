#pragma once

#include <stdexcept>
#include <string>

namespace curv {

// Base class for all library errors so callers can catch curv::Error.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input (bad JSON, dimension mismatch, bad form).
class ParseError : public Error {
public:
  using Error::Error;
};

// Context construction failed (phi not symmetric positive definite, dim < 1).
class ContextError : public Error {
public:
  using Error::Error;
};

// A generation constraint cannot be met (e.g. odd rank for a skew operator).
class ConstraintError : public Error {
public:
  using Error::Error;
};

// A theorem's hypothesis is not satisfied by the inputs.
class HypothesisError : public Error {
public:
  using Error::Error;
};

// A verified premise (e.g. a vanishing signed sum) does not hold.
class PremiseError : public Error {
public:
  using Error::Error;
};

// Kernel-based reduction requested on an operator with trivial kernel.
class KernelError : public Error {
public:
  using Error::Error;
};

// A map does not satisfy the required image/kernel containment.
class DomainError : public Error {
public:
  using Error::Error;
};

// Random sampling failed to produce a usable configuration within budget.
class SamplingError : public Error {
public:
  using Error::Error;
};

}  // namespace curv
