#pragma once

#include <stdexcept>
#include <string>

namespace qnipm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition/dimension violations.
struct ContractViolation : Error {
  using Error::Error;
};

// Non-finite values or loss of accuracy beyond contract tolerances.
struct NumericError : Error {
  using Error::Error;
};

// Cholesky breakdown; carries the first non-positive pivot.
struct FactorizationError : Error {
  int pivot_index;
  FactorizationError(const std::string& what, int pivot)
      : Error(what), pivot_index(pivot) {}
};

// Solver option violates a theorem's parameter condition; names it.
struct ConfigError : Error {
  std::string condition;
  ConfigError(const std::string& what, std::string cond)
      : Error(what), condition(std::move(cond)) {}
};

struct GenerationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace qnipm
