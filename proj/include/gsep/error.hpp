#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsep {

enum class Fault {
  AxiomViolation,
  NotAssociative,
  UnitLawFails,
  GradingViolation,
  NotObjectUnital,
  LocalUnitMissing,
  AlphaNotIso,
  O1Fail,
  O2Fail,
  O3Fail,
  O4Fail,
  BetaNotUnit,
  NotWide,
  NotClosed,
  NotStronglyGraded,
  NotNormal,
  AlphaNotTrivial,
  NotFixedCentral,
  CapacityExceeded,
  VerificationFailed,
  DimensionMismatch,
  InvalidInput,
};

std::string_view fault_name(Fault fault);

/// A failed check together with the indices that witness it.
struct Violation {
  Fault fault;
  std::vector<std::int64_t> witness;
  std::string detail;

  std::string describe() const;
};

class Error : public std::runtime_error {
 public:
  explicit Error(Violation violation);
  Error(Fault fault, std::vector<std::int64_t> witness, std::string detail = {});

  const Violation& violation() const noexcept { return violation_; }
  Fault fault() const noexcept { return violation_.fault; }

 private:
  Violation violation_;
};

}  // namespace gsep
