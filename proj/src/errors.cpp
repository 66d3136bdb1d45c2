#include "specgraph/errors.hpp"

namespace specgraph {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::NoConvergence: return "NoConvergence";
  case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
  case ErrorKind::OutsideStrip: return "OutsideStrip";
  case ErrorKind::StallNearBranchPoint: return "StallNearBranchPoint";
  case ErrorKind::StepCollapse: return "StepCollapse";
  case ErrorKind::InconsistentGraph: return "InconsistentGraph";
  case ErrorKind::WanderedOffCurve: return "WanderedOffCurve";
  case ErrorKind::OffCurve: return "OffCurve";
  case ErrorKind::SingularB: return "SingularB";
  case ErrorKind::EigensolverFailure: return "EigensolverFailure";
  case ErrorKind::DefectiveBasis: return "DefectiveBasis";
  case ErrorKind::TooFewTrusted: return "TooFewTrusted";
  case ErrorKind::DegenerateRegion: return "DegenerateRegion";
  }
  return "Unknown";
}

NumericalError::NumericalError(ErrorKind kind, std::string module, std::string operation,
                               const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " in " + module + "::" + operation +
                         (detail.empty() ? std::string() : ": " + detail)),
      kind_(kind), module_(std::move(module)), operation_(std::move(operation)) {}

} // namespace specgraph
