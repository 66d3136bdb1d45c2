#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specgraph {

enum class ErrorKind {
  NoConvergence,
  BranchAmbiguity,
  OutsideStrip,
  StallNearBranchPoint,
  StepCollapse,
  InconsistentGraph,
  WanderedOffCurve,
  OffCurve,
  SingularB,
  EigensolverFailure,
  DefectiveBasis,
  TooFewTrusted,
  DegenerateRegion,
};

std::string_view to_string(ErrorKind kind);

/// Failure of a numerical procedure. Carries the module/operation that raised
/// it so the CLI can emit a machine-readable error record.
class NumericalError : public std::runtime_error {
public:
  NumericalError(ErrorKind kind, std::string module, std::string operation,
                 const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

private:
  ErrorKind kind_;
  std::string module_;
  std::string operation_;
};

/// Invalid user configuration (bad profile string, inconsistent parameters).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace specgraph
