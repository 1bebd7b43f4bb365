#include "physarum/error.hpp"

namespace physarum {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyInstance: return "EmptyInstance";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::NonPositiveCost: return "NonPositiveCost";
        case ErrorCode::ZeroRhs: return "ZeroRhs";
        case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
        case ErrorCode::UnbalancedSupplies: return "UnbalancedSupplies";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::AsymmetricInput: return "AsymmetricInput";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularLaplacian: return "SingularLaplacian";
        case ErrorCode::NonPositiveState: return "NonPositiveState";
        case ErrorCode::StepCollapse: return "StepCollapse";
        case ErrorCode::PositivityViolation: return "PositivityViolation";
        case ErrorCode::ZeroCost: return "ZeroCost";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::AbsoluteContinuityViolation: return "AbsoluteContinuityViolation";
        case ErrorCode::InfeasibleStart: return "InfeasibleStart";
        case ErrorCode::InfeasibleCandidate: return "InfeasibleCandidate";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NotSimplexInstance: return "NotSimplexInstance";
        case ErrorCode::NonPositivePrimal: return "NonPositivePrimal";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace physarum
