#include "ontogdss/error.hpp"

namespace ontogdss {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::EmptyOutline: return "EmptyOutline";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::MissingScore: return "MissingScore";
    case ErrorCode::EmptyPool: return "EmptyPool";
    case ErrorCode::InvalidStage: return "InvalidStage";
    case ErrorCode::InsufficientCandidates: return "InsufficientCandidates";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::SelfRelation: return "SelfRelation";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooFewSchemes: return "TooFewSchemes";
    case ErrorCode::NonRectangular: return "NonRectangular";
    case ErrorCode::InvalidCriterion: return "InvalidCriterion";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::MismatchedSchemeSets: return "MismatchedSchemeSets";
    case ErrorCode::InvalidBallot: return "InvalidBallot";
    case ErrorCode::NoViableScheme: return "NoViableScheme";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::NoPanel: return "NoPanel";
    case ErrorCode::NoTree: return "NoTree";
    case ErrorCode::WrongStage: return "WrongStage";
    case ErrorCode::MissingMatrix: return "MissingMatrix";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::UnknownVerb: return "UnknownVerb";
    case ErrorCode::InvalidPayload: return "InvalidPayload";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::StoreLocked: return "StoreLocked";
    case ErrorCode::ParseFailure: return "ParseFailure";
  }
  return "Unknown";
}

}  // namespace ontogdss
