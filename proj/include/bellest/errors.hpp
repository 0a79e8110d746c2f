#pragma once

#include <stdexcept>
#include <string>

namespace bellest {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error {
  using Error::Error;
};
struct InvalidSpectrumError : Error {
  using Error::Error;
};
struct AlphaOutOfRangeError : Error {
  using Error::Error;
};
struct SuperQuantumError : Error {
  using Error::Error;
};
struct NoViolationError : Error {
  using Error::Error;
};
struct DegenerateStateError : Error {
  using Error::Error;
};
struct InfeasibleThetaError : Error {
  using Error::Error;
};
struct SolverFailureError : Error {
  using Error::Error;
};
struct ParamOutOfRangeError : Error {
  using Error::Error;
};
struct ConditionNotMetError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

}  // namespace bellest
