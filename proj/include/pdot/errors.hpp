#pragma once

#include <stdexcept>
#include <string>

namespace pdot {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- distribution construction --------------------------------------------
class DimensionMismatch : public Error {
  public:
    using Error::Error;
};
class NegativeWeight : public Error {
  public:
    using Error::Error;
};
class WeightSumOutOfRange : public Error {
  public:
    using Error::Error;
};
class DuplicateAtom : public Error {
  public:
    using Error::Error;
};

// -- transport / cost matrices ---------------------------------------------
class ShapeMismatch : public Error {
  public:
    using Error::Error;
};
class InvalidOrder : public Error {
  public:
    using Error::Error;
};
class LipschitzViolation : public Error {
  public:
    using Error::Error;
};

// -- linear programming -----------------------------------------------------
class CyclingGuardExceeded : public Error {
  public:
    using Error::Error;
};
class DualInfeasible : public Error {
  public:
    using Error::Error;
};
class EnumerationTooLarge : public Error {
  public:
    using Error::Error;
};

// -- two-stage instances ----------------------------------------------------
class InfeasibleRecourse : public Error {
  public:
    using Error::Error;
};

// -- stability checks -------------------------------------------------------
class CertificateMissing : public Error {
  public:
    using Error::Error;
};
class SupportMismatch : public Error {
  public:
    using Error::Error;
};
class NotSymmetric : public Error {
  public:
    using Error::Error;
};

// -- scenario reduction -----------------------------------------------------
class TooManySubsets : public Error {
  public:
    using Error::Error;
};

// -- instance files ---------------------------------------------------------
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace pdot
