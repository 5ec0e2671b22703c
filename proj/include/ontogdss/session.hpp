#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ontogdss/argumentation.hpp"
#include "ontogdss/group_selection.hpp"
#include "ontogdss/mcdm.hpp"
#include "ontogdss/ontology.hpp"
#include "ontogdss/task_tree.hpp"

namespace ontogdss {

class ResourceStore;

/// The seven stages of the group decision process, in order.
enum class Stage {
  ProblemProduction,
  PropertiesAnalysis,
  SchemeEstablishment,
  SchemeEvaluation,
  SchemeSelection,
  SchemeVerification,
  GeneralApplication,
};

inline constexpr std::array<Stage, 7> kAllStages = {
    Stage::ProblemProduction, Stage::PropertiesAnalysis, Stage::SchemeEstablishment,
    Stage::SchemeEvaluation,  Stage::SchemeSelection,    Stage::SchemeVerification,
    Stage::GeneralApplication,
};

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view text);

/// Forward by exactly one stage, or Verification back to Establishment.
bool is_legal_transition(Stage from, Stage to);

struct Assignment {
  std::map<std::string, std::vector<std::string>> by_node;

  /// Number of nodes each evaluator is responsible for.
  std::map<std::string, std::size_t> loads() const;
  bool operator==(const Assignment&) const = default;
};

/// An evaluator's input for one node: either a ranking of the node's schemes
/// or a score table over the node matrix's criteria (ranked by PROMETHEE II
/// at decision time).
struct Submission {
  std::string evaluator;
  double weight = 1.0;
  std::optional<std::vector<std::string>> ranking;
  std::optional<std::vector<std::vector<double>>> scores;

  bool operator==(const Submission&) const = default;
};

struct NodeWork {
  ArgumentBoard board;
  std::optional<DecisionMatrix> matrix;
  std::map<std::string, Submission> submissions;  // keyed by evaluator
  std::optional<ConsensusRecord> consensus;
  std::optional<GroupRanking> group_ranking;
  std::vector<RankingBallot> ballots;  // ballots the last decision used

  bool operator==(const NodeWork&) const = default;
};

struct Event {
  std::uint64_t seq = 0;
  std::string type;
  nlohmann::json data;

  bool operator==(const Event&) const = default;
};

/// Event-sourced decision session. Every state change goes through an event
/// appended to `log`; replay(log) rebuilds an equal session.
struct Session {
  std::string id;
  DecisionProblem problem;
  std::optional<TaskTree> tree;
  std::optional<GroupPool> pool;
  std::vector<std::string> alternatives;
  std::optional<EvaluatorPanel> panel;
  std::optional<Assignment> assignment;
  std::map<std::string, NodeWork> nodes;
  Stage stage = Stage::ProblemProduction;
  std::map<std::string, std::string> results;
  std::vector<Event> log;

  const NodeWork* node_work(const std::string& node) const;
  bool operator==(const Session&) const = default;
};

Session create_session(const std::string& id, const std::string& title, const std::string& description);

/// Rebuilds a session by applying `log` from scratch.
Session replay(const std::vector<Event>& log);

void annotate_problem(Session& session, const ConceptAssertion& assertion);
ProblemStructure classify_session_problem(Session& session, const ResourceStore& store,
                                          double similarity_threshold = kDefaultStructuredSimilarity);
void decompose_problem(Session& session, const TaskOutline& outline);
void select_panel(Session& session, const GroupPool& pool, const std::vector<std::string>& alternatives,
                  const SelectionStage& stage1, const SelectionStage& stage2, int k);

/// Balanced round-robin: max(leaves, evaluators) slots, slot s pairs leaf
/// s mod L with evaluator s mod E in panel order. Throws NoPanel or NoTree.
Assignment appoint_tasks(const Session& session);
void record_assignment(Session& session, const Assignment& assignment);

void add_element(Session& session, const std::string& node, const ArgumentElement& element);
void relate_elements(Session& session, const std::string& node, const std::string& source,
                     const std::string& target, RelationType type);
void unrelate_elements(Session& session, const std::string& node, const std::string& source,
                       const std::string& target);

/// Throws IllegalTransition with from/to details.
void advance_stage(Session& session, Stage target);

void set_matrix(Session& session, const std::string& node, const DecisionMatrix& matrix);
void submit_ranking(Session& session, const std::string& node, const Submission& submission);

/// Commits consensus on the node's board, drops schemes vetoed by rejected
/// opinions, turns every submission into a ballot, aggregates by Borda and
/// records the top scheme. Needs stage SchemeSelection.
void run_group_decision(Session& session, const std::string& node,
                        Semantics semantics = Semantics::Grounded,
                        std::size_t extension_bound = kDefaultExtensionBound);

/// Idempotent for the same scheme; always logs an event.
void record_result(Session& session, const std::string& node, const std::string& scheme);

}  // namespace ontogdss
