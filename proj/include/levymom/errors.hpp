#pragma once

#include <stdexcept>
#include <string>

namespace levymom {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The model violates a structural requirement (stability, positivity, ...).
class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// A moment of the initial push or of the jump measure was not supplied.
class MissingMoment : public Error {
 public:
  using Error::Error;
};

/// rho = phi_1 >= 0: the process does not drift to -inf.
class InvalidRho : public InvalidModel {
 public:
  using InvalidModel::InvalidModel;
};

/// A computation needs E zeta^k finite but the jump measure has eta_{k+1} = inf.
class FiniteMomentRequired : public Error {
 public:
  using Error::Error;
};

/// Quadrature failure, vanishing denominators and similar numerical breakdowns.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// 1/(alpha x + beta - phibar) with a nonpositive denominator.
class NonpositiveDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A formula divides by an exact or numerical zero.
class ZeroDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The requested operation is not available for this input (wrong model class,
/// inexact value requested in rational mode, ...).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the operation's domain (x1 > x2, beta <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The operation is defined for compound Poisson models only.
class NonCPPModel : public Unsupported {
 public:
  using Unsupported::Unsupported;
};

/// Exact simulation was requested for a model with a Brownian part.
class EulerRequired : public Unsupported {
 public:
  using Unsupported::Unsupported;
};

/// Arguments given in the wrong order (x1 > x2).
class ArgumentOrder : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed user input: configuration files, polynomial strings, arguments.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace levymom
