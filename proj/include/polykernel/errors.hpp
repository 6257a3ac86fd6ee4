#pragma once

#include <stdexcept>
#include <string>

namespace polykernel {

// Base class for every error raised by this library. Catching polykernel::Error
// is enough to map any library failure onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction or call parameters (bad alpha, empty atom list,
// mismatched dimensions, negative indices, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the domain where the object is defined, e.g.
// |lambda| >= R_s^2 in the kernel series.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A floating-point moment factorization hit the condition-number threshold.
// Carries the estimate so callers can report it.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double cond)
      : Error(what), cond_(cond) {}
  double cond_estimate() const { return cond_; }

 private:
  double cond_;
};

// The moment matrix is exactly singular: a discrete measure cannot support
// the requested polynomial degree.
class RankError : public Error {
 public:
  using Error::Error;
};

// A quadrature rule or tool configuration cannot resolve the requested
// computation (insufficient exactness, missing data file, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Too few moments available to estimate a support radius.
class EstimationError : public Error {
 public:
  using Error::Error;
};

}  // namespace polykernel
