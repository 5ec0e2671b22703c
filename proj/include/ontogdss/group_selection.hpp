#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontogdss/ontology.hpp"

namespace ontogdss {

struct DecisionMaker {
  std::string id;
  std::string name;
  std::string group;
  std::map<std::string, Scalar> attributes;

  bool operator==(const DecisionMaker&) const = default;
};

struct EvaluatorGroup {
  std::string id;
  std::vector<DecisionMaker> members;

  bool operator==(const EvaluatorGroup&) const = default;
};

struct GroupPool {
  std::vector<EvaluatorGroup> groups;

  bool operator==(const GroupPool&) const = default;
};

/// One assessment criterion. An attribute matches when it equals one of
/// `admissible`, or, for numeric attributes, lies in [min, max] when a bound
/// is given. A criterion with neither never matches.
struct SelectionCriterion {
  std::string attribute;
  std::vector<Scalar> admissible;
  std::optional<double> min;
  std::optional<double> max;
  double weight = 1.0;

  bool matches(const DecisionMaker& dm) const;
  bool operator==(const SelectionCriterion&) const = default;
};

struct SelectionStage {
  std::vector<SelectionCriterion> criteria;
  double threshold = 0.0;

  bool operator==(const SelectionStage&) const = default;
};

struct ScoredCandidate {
  std::string id;
  double score = 0.0;

  bool operator==(const ScoredCandidate&) const = default;
};

struct GroupCandidates {
  std::string group;
  std::vector<ScoredCandidate> candidates;
};

struct GroupSelection {
  std::string group;
  std::vector<std::string> evaluators;

  bool operator==(const GroupSelection&) const = default;
};

struct AlternativePanel {
  std::string alternative;
  std::vector<GroupSelection> groups;

  bool operator==(const AlternativePanel&) const = default;
};

struct EvaluatorPanel {
  std::vector<AlternativePanel> alternatives;

  /// Distinct evaluator ids in first-appearance order.
  std::vector<std::string> evaluators() const;
  std::size_t selection_count() const;

  bool operator==(const EvaluatorPanel&) const = default;
};

/// Weighted fraction of matched criteria, in [0, 1].
/// Throws InvalidStage when weights are negative or sum to zero.
double stage_score(const DecisionMaker& dm, const SelectionStage& stage);

/// Per group, the members scoring at least the threshold, best first, ties by id.
std::vector<GroupCandidates> first_selection(const GroupPool& pool, const SelectionStage& stage1);

/// Per group, the top `k` candidates by stage-2 score, ties by id.
/// Throws InsufficientCandidates naming the first short group.
std::vector<GroupSelection> second_selection(const std::vector<GroupCandidates>& candidates,
                                             const GroupPool& pool, const SelectionStage& stage2,
                                             int k);

/// Runs both stages for every alternative. A member whose id equals the
/// alternative's id is never chosen to evaluate it.
EvaluatorPanel double_select(const GroupPool& pool, const std::vector<std::string>& alternatives,
                             const SelectionStage& stage1, const SelectionStage& stage2, int k);

}  // namespace ontogdss
