#pragma once

#include <stdexcept>
#include <string>

namespace physarum {

enum class ErrorCode {
    EmptyInstance,
    RankDeficient,
    NonPositiveCost,
    ZeroRhs,
    DisconnectedGraph,
    UnbalancedSupplies,
    ParseError,
    SchemaError,
    NotPositiveDefinite,
    AsymmetricInput,
    DimensionMismatch,
    SingularLaplacian,
    NonPositiveState,
    StepCollapse,
    PositivityViolation,
    ZeroCost,
    NotNormalized,
    AbsoluteContinuityViolation,
    InfeasibleStart,
    InfeasibleCandidate,
    Infeasible,
    TooLarge,
    SingularSystem,
    NotSimplexInstance,
    NonPositivePrimal,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception: a code for programmatic handling plus a
/// human-readable message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace physarum
