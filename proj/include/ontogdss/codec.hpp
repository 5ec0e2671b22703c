#pragma once

// JSON representations of every persisted type. Field names are documented in
// docs/schema.md and are stable within a schema version.

#include <string>
#include <string_view>

#include "json.hpp"
#include "ontogdss/error.hpp"
#include "ontogdss/argumentation.hpp"
#include "ontogdss/group_selection.hpp"
#include "ontogdss/mcdm.hpp"
#include "ontogdss/ontology.hpp"
#include "ontogdss/resource_store.hpp"
#include "ontogdss/session.hpp"
#include "ontogdss/task_tree.hpp"

namespace ontogdss {

using nlohmann::json;

void to_json(json& j, const ConceptAssertion& v);
void from_json(const json& j, ConceptAssertion& v);
void to_json(json& j, const ConceptAnnotation& v);
void from_json(const json& j, ConceptAnnotation& v);
void to_json(json& j, const DecisionProblem& v);
void from_json(const json& j, DecisionProblem& v);

void to_json(json& j, const TaskNode& v);
void from_json(const json& j, TaskNode& v);
void to_json(json& j, const TaskTree& v);
void from_json(const json& j, TaskTree& v);
void to_json(json& j, const TaskOutline& v);
void from_json(const json& j, TaskOutline& v);

void to_json(json& j, const DecisionMaker& v);
void from_json(const json& j, DecisionMaker& v);
void to_json(json& j, const EvaluatorGroup& v);
void from_json(const json& j, EvaluatorGroup& v);
void to_json(json& j, const GroupPool& v);
void from_json(const json& j, GroupPool& v);
void to_json(json& j, const SelectionCriterion& v);
void from_json(const json& j, SelectionCriterion& v);
void to_json(json& j, const SelectionStage& v);
void from_json(const json& j, SelectionStage& v);
void to_json(json& j, const GroupSelection& v);
void from_json(const json& j, GroupSelection& v);
void to_json(json& j, const AlternativePanel& v);
void from_json(const json& j, AlternativePanel& v);
void to_json(json& j, const EvaluatorPanel& v);
void from_json(const json& j, EvaluatorPanel& v);

void to_json(json& j, const ArgumentElement& v);
void from_json(const json& j, ArgumentElement& v);
void to_json(json& j, const ArgRelation& v);
void from_json(const json& j, ArgRelation& v);
void to_json(json& j, const ArgumentBoard& v);
void from_json(const json& j, ArgumentBoard& v);
void to_json(json& j, const ArgumentationFramework& v);
void to_json(json& j, const ConsensusRecord& v);
void from_json(const json& j, ConsensusRecord& v);

void to_json(json& j, const PreferenceFunction& v);
void from_json(const json& j, PreferenceFunction& v);
void to_json(json& j, const CriterionSpec& v);
void from_json(const json& j, CriterionSpec& v);
void to_json(json& j, const DecisionMatrix& v);
void from_json(const json& j, DecisionMatrix& v);
void to_json(json& j, const RankingBallot& v);
void from_json(const json& j, RankingBallot& v);
void to_json(json& j, const GroupRanking& v);
void from_json(const json& j, GroupRanking& v);
void to_json(json& j, const FlowResult& v);
void to_json(json& j, const OutrankingResult& v);

void to_json(json& j, const Assignment& v);
void from_json(const json& j, Assignment& v);
void to_json(json& j, const Submission& v);
void from_json(const json& j, Submission& v);
void to_json(json& j, const NodeWork& v);
void from_json(const json& j, NodeWork& v);
void to_json(json& j, const Event& v);
void from_json(const json& j, Event& v);
void to_json(json& j, const Session& v);
void from_json(const json& j, Session& v);

void to_json(json& j, const ResourceEntry& v);
void from_json(const json& j, ResourceEntry& v);

/// {"schema_version": 1, "session": {...}}
json session_document(const Session& session);
/// Throws SchemaMismatch or ParseFailure.
Session session_from_document(const json& doc);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const json& j);

/// Parses text, mapping syntax errors to ParseFailure.
json parse_json(std::string_view text);

/// Converts `j` to T, rethrowing nlohmann type/range errors as InvalidPayload.
template <typename T>
T decode(const json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidPayload, std::string(what) + ": " + e.what());
  }
}

}  // namespace ontogdss

// Scalar is a std::variant, which ADL cannot route back to this namespace.
template <>
struct nlohmann::adl_serializer<ontogdss::Scalar> {
  static void to_json(json& j, const ontogdss::Scalar& v);
  static void from_json(const json& j, ontogdss::Scalar& v);
};
