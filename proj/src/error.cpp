#include "gsep/error.hpp"

#include <sstream>

namespace gsep {

std::string_view fault_name(Fault fault) {
  switch (fault) {
    case Fault::AxiomViolation: return "AxiomViolation";
    case Fault::NotAssociative: return "NotAssociative";
    case Fault::UnitLawFails: return "UnitLawFails";
    case Fault::GradingViolation: return "GradingViolation";
    case Fault::NotObjectUnital: return "NotObjectUnital";
    case Fault::LocalUnitMissing: return "LocalUnitMissing";
    case Fault::AlphaNotIso: return "AlphaNotIso";
    case Fault::O1Fail: return "O1Fail";
    case Fault::O2Fail: return "O2Fail";
    case Fault::O3Fail: return "O3Fail";
    case Fault::O4Fail: return "O4Fail";
    case Fault::BetaNotUnit: return "BetaNotUnit";
    case Fault::NotWide: return "NotWide";
    case Fault::NotClosed: return "NotClosed";
    case Fault::NotStronglyGraded: return "NotStronglyGraded";
    case Fault::NotNormal: return "NotNormal";
    case Fault::AlphaNotTrivial: return "AlphaNotTrivial";
    case Fault::NotFixedCentral: return "NotFixedCentral";
    case Fault::CapacityExceeded: return "CapacityExceeded";
    case Fault::VerificationFailed: return "VerificationFailed";
    case Fault::DimensionMismatch: return "DimensionMismatch";
    case Fault::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::string Violation::describe() const {
  std::ostringstream out;
  out << fault_name(fault);
  if (!witness.empty()) {
    out << '(';
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i) out << ',';
      out << witness[i];
    }
    out << ')';
  }
  if (!detail.empty()) out << ": " << detail;
  return out.str();
}

Error::Error(Violation violation)
    : std::runtime_error(violation.describe()), violation_(std::move(violation)) {}

Error::Error(Fault fault, std::vector<std::int64_t> witness, std::string detail)
    : Error(Violation{fault, std::move(witness), std::move(detail)}) {}

}  // namespace gsep
