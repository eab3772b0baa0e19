#pragma once

#include <stdexcept>
#include <string>

namespace conecert {

// Base for every error raised by the library. Each subclass corresponds to
// one failure category that callers (and the CLI exit-code mapping) care about.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Points of different kind or dimension were combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// The cone or function does not support the requested operation
// (lattice operations on the PSD cone, k above the difference cap, ...).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative or sampled numerics could not produce a trustworthy answer.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// Hypotheses of an inequality generator do not hold for the supplied data.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace conecert
