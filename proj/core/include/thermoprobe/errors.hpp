#pragma once

#include <stdexcept>
#include <string>

namespace thermoprobe {

enum class ErrorKind {
  QuadratureFailure,
  SingularElimination,
  DegenerateConductor,
  RegimeUndefined,
  AsymmetryUndefined,
  NoEngineRegime,
  DegenerateCarnot,
  ZeroDrive,
  SingularMerit,
  SingularLoad,
  Domain,
  Pole,
  IllConditioned,
  Validation,
};

const char* to_string(ErrorKind kind);

// Base for every numerical or contract failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when the integrand produces a non-finite value; carries the energy.
class QuadratureError : public Error {
 public:
  QuadratureError(double energy, const std::string& what)
      : Error(ErrorKind::QuadratureFailure, what), energy_(energy) {}

  double energy() const noexcept { return energy_; }

 private:
  double energy_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(ErrorKind::Validation, field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace thermoprobe
