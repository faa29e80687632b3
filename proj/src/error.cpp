#include "qsec/error.hpp"

namespace qsec {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Disagreement: return "Disagreement";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidKnot: return "InvalidKnot";
        case ErrorCode::GenericityFailure: return "GenericityFailure";
        case ErrorCode::NonGenericProjection: return "NonGenericProjection";
        case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorCode::InfiniteFamily: return "InfiniteFamily";
        case ErrorCode::TangencyAmbiguity: return "TangencyAmbiguity";
        case ErrorCode::NonIntegralSum: return "NonIntegralSum";
        case ErrorCode::ContinuationStall: return "ContinuationStall";
        case ErrorCode::SeedResolutionFailure: return "SeedResolutionFailure";
        case ErrorCode::UnconsumedSeed: return "UnconsumedSeed";
        case ErrorCode::ZeroCurvature: return "ZeroCurvature";
        case ErrorCode::NonTransverse: return "NonTransverse";
        case ErrorCode::DegenerateHull: return "DegenerateHull";
        case ErrorCode::ClosedComponentCrossing: return "ClosedComponentCrossing";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

}  // namespace qsec
