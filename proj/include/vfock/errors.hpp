#pragma once

#include <stdexcept>
#include <string>

namespace vfock {

enum class ErrorKind {
  Parameter,
  UnsupportedFamily,
  DomainCoverage,
  Inconclusive,
  Precondition,
  Consistency,
  PartialOracle,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Invalid weight/family parameters. The message names the violated constraint.
struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error(ErrorKind::Parameter, what) {}
};

// Operation needs closed-form derivatives, but the weight only carries a log-value.
struct UnsupportedFamilyError : Error {
  explicit UnsupportedFamilyError(const std::string& what) : Error(ErrorKind::UnsupportedFamily, what) {}
};

// A grid or search interval does not reach past a maximizer.
struct DomainCoverageError : Error {
  explicit DomainCoverageError(const std::string& what) : Error(ErrorKind::DomainCoverage, what) {}
};

// A weight/growth hypothesis required by a criterion failed. `condition` names it.
struct PreconditionError : Error {
  PreconditionError(std::string condition, const std::string& what)
      : Error(ErrorKind::Precondition, what), condition(std::move(condition)) {}
  std::string condition;
};

// Numeric pipeline disagrees with the exact polynomial-degree rule.
struct ConsistencyError : Error {
  explicit ConsistencyError(const std::string& what) : Error(ErrorKind::Consistency, what) {}
};

// Boundedness rule queried where it is not stated (p < 1).
struct PartialOracleError : Error {
  explicit PartialOracleError(const std::string& what) : Error(ErrorKind::PartialOracle, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

}  // namespace vfock
