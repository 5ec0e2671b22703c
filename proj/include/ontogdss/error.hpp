#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ontogdss {

/// Machine-readable failure categories. The string form returned by
/// to_string() is part of the wire contract and never changes.
enum class ErrorCode {
  EmptyLabel,
  EmptyOutline,
  DuplicateId,
  InvalidId,
  InvalidTree,
  MissingScore,
  EmptyPool,
  InvalidStage,
  InsufficientCandidates,
  UnknownElement,
  SelfRelation,
  TooLarge,
  TooFewSchemes,
  NonRectangular,
  InvalidCriterion,
  InvalidMatrix,
  MismatchedSchemeSets,
  InvalidBallot,
  NoViableScheme,
  IllegalTransition,
  NoPanel,
  NoTree,
  WrongStage,
  MissingMatrix,
  UnknownScheme,
  UnknownNode,
  UnknownSession,
  UnknownVerb,
  InvalidPayload,
  NotFound,
  SchemaMismatch,
  IoFailure,
  StoreLocked,
  ParseFailure,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json details = nlohmann::json::object())
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

}  // namespace ontogdss
