#include "ontogdss/session.hpp"

#include <algorithm>
#include <set>

#include "ontogdss/codec.hpp"
#include "ontogdss/error.hpp"
#include "ontogdss/resource_store.hpp"

namespace ontogdss {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::ProblemProduction: return "ProblemProduction";
    case Stage::PropertiesAnalysis: return "PropertiesAnalysis";
    case Stage::SchemeEstablishment: return "SchemeEstablishment";
    case Stage::SchemeEvaluation: return "SchemeEvaluation";
    case Stage::SchemeSelection: return "SchemeSelection";
    case Stage::SchemeVerification: return "SchemeVerification";
    case Stage::GeneralApplication: return "GeneralApplication";
  }
  return "";
}

std::optional<Stage> parse_stage(std::string_view text) {
  for (Stage s : kAllStages) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

bool is_legal_transition(Stage from, Stage to) {
  auto f = static_cast<int>(from);
  auto t = static_cast<int>(to);
  if (t == f + 1) return true;
  return from == Stage::SchemeVerification && to == Stage::SchemeEstablishment;
}

std::map<std::string, std::size_t> Assignment::loads() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [node, evaluators] : by_node) {
    for (const auto& e : evaluators) ++out[e];
  }
  return out;
}

const NodeWork* Session::node_work(const std::string& node) const {
  auto it = nodes.find(node);
  return it == nodes.end() ? nullptr : &it->second;
}

namespace {

namespace ev {
constexpr const char* kCreated = "SessionCreated";
constexpr const char* kAnnotated = "ProblemAnnotated";
constexpr const char* kClassified = "ProblemClassified";
constexpr const char* kDecomposed = "TreeDecomposed";
constexpr const char* kPanel = "PanelSelected";
constexpr const char* kAppointed = "TasksAppointed";
constexpr const char* kElement = "ElementAdded";
constexpr const char* kRelation = "RelationSet";
constexpr const char* kUnrelation = "RelationRemoved";
constexpr const char* kStage = "StageAdvanced";
constexpr const char* kMatrix = "MatrixSet";
constexpr const char* kSubmission = "RankingSubmitted";
constexpr const char* kConsensus = "ConsensusCommitted";
constexpr const char* kRanked = "GroupRanked";
constexpr const char* kResult = "ResultRecorded";
}  // namespace ev

// The only place session state changes. Events are validated before they are
// created, so applying one never fails on a consistent session.
void apply_event(Session& s, const Event& e) {
  const json& d = e.data;
  const std::string& t = e.type;
  if (t == ev::kCreated) {
    s = Session{};
    s.id = d.at("id").get<std::string>();
    s.problem.id = s.id;
    s.problem.title = d.at("title").get<std::string>();
    s.problem.description = d.at("description").get<std::string>();
  } else if (t == ev::kAnnotated) {
    s.problem.annotation.put(d.at("assertion").get<ConceptAssertion>());
  } else if (t == ev::kClassified) {
    s.problem.structure = *parse_problem_structure(d.at("structure").get<std::string>());
  } else if (t == ev::kDecomposed) {
    s.tree = d.at("tree").get<TaskTree>();
    s.nodes.clear();
    s.results.clear();
    s.assignment.reset();
    for (const auto& [id, node] : s.tree->nodes) s.nodes[id];
  } else if (t == ev::kPanel) {
    s.pool = d.at("pool").get<GroupPool>();
    s.alternatives = d.at("alternatives").get<std::vector<std::string>>();
    s.panel = d.at("panel").get<EvaluatorPanel>();
    s.assignment.reset();
  } else if (t == ev::kAppointed) {
    s.assignment = d.at("assignment").get<Assignment>();
  } else if (t == ev::kElement) {
    s.nodes.at(d.at("node").get<std::string>()).board.add_element(d.at("element").get<ArgumentElement>());
  } else if (t == ev::kRelation) {
    s.nodes.at(d.at("node").get<std::string>())
        .board.relate(d.at("source").get<std::string>(), d.at("target").get<std::string>(),
                      *parse_relation_type(d.at("type").get<std::string>()));
  } else if (t == ev::kUnrelation) {
    s.nodes.at(d.at("node").get<std::string>())
        .board.unrelate(d.at("source").get<std::string>(), d.at("target").get<std::string>());
  } else if (t == ev::kStage) {
    s.stage = *parse_stage(d.at("to").get<std::string>());
  } else if (t == ev::kMatrix) {
    auto& work = s.nodes.at(d.at("node").get<std::string>());
    work.matrix = d.at("matrix").get<DecisionMatrix>();
    work.submissions.clear();
  } else if (t == ev::kSubmission) {
    auto sub = d.at("submission").get<Submission>();
    std::string evaluator = sub.evaluator;
    s.nodes.at(d.at("node").get<std::string>()).submissions.insert_or_assign(std::move(evaluator), std::move(sub));
  } else if (t == ev::kConsensus) {
    s.nodes.at(d.at("node").get<std::string>()).consensus = d.at("record").get<ConsensusRecord>();
  } else if (t == ev::kRanked) {
    auto& work = s.nodes.at(d.at("node").get<std::string>());
    work.ballots = d.at("ballots").get<std::vector<RankingBallot>>();
    work.group_ranking = d.at("ranking").get<GroupRanking>();
  } else if (t == ev::kResult) {
    auto node = d.at("node").get<std::string>();
    auto scheme = d.at("scheme").get<std::string>();
    s.results[node] = scheme;
    if (s.tree) {
      if (TaskNode* n = s.tree->find(node)) n->solved_scheme = scheme;
    }
  } else {
    throw Error(ErrorCode::InvalidPayload, "unknown event type '" + t + "'", {{"type", t}});
  }
}

void commit(Session& s, const char* type, json data) {
  Event e{s.log.size() + 1, type, std::move(data)};
  apply_event(s, e);
  s.log.push_back(std::move(e));
}

const NodeWork& require_node(const Session& s, const std::string& node) {
  if (!s.tree) throw Error(ErrorCode::NoTree, "session has no task tree yet");
  const NodeWork* work = s.node_work(node);
  if (work == nullptr || s.tree->find(node) == nullptr) {
    throw Error(ErrorCode::UnknownNode, "no task node '" + node + "'", {{"node", node}});
  }
  return *work;
}

}  // namespace

Session create_session(const std::string& id, const std::string& title, const std::string& description) {
  if (!is_valid_id(id)) throw Error(ErrorCode::InvalidId, "invalid session id '" + id + "'", {{"id", id}});
  Session s;
  commit(s, ev::kCreated, json{{"id", id}, {"title", title}, {"description", description}});
  return s;
}

Session replay(const std::vector<Event>& log) {
  Session s;
  for (const auto& e : log) {
    apply_event(s, e);
    s.log.push_back(e);
  }
  return s;
}

void annotate_problem(Session& session, const ConceptAssertion& assertion) {
  if (assertion.label.empty()) {
    throw Error(ErrorCode::EmptyLabel, "concept assertion label must not be empty");
  }
  commit(session, ev::kAnnotated, json{{"assertion", assertion}});
}

ProblemStructure classify_session_problem(Session& session, const ResourceStore& store,
                                          double similarity_threshold) {
  auto structure = classify_problem(session.problem.annotation, store, similarity_threshold);
  commit(session, ev::kClassified, json{{"structure", to_string(structure)}});
  return structure;
}

void decompose_problem(Session& session, const TaskOutline& outline) {
  TaskTree tree = decompose(session.problem, outline);
  for (const auto& [id, node] : tree.nodes) {
    if (!is_valid_id(id)) throw Error(ErrorCode::InvalidId, "invalid task node id '" + id + "'", {{"id", id}});
  }
  commit(session, ev::kDecomposed, json{{"tree", tree}});
}

void select_panel(Session& session, const GroupPool& pool, const std::vector<std::string>& alternatives,
                  const SelectionStage& stage1, const SelectionStage& stage2, int k) {
  EvaluatorPanel panel = double_select(pool, alternatives, stage1, stage2, k);
  commit(session, ev::kPanel,
         json{{"pool", pool},
              {"alternatives", alternatives},
              {"stage1", stage1},
              {"stage2", stage2},
              {"k", k},
              {"panel", panel}});
}

Assignment appoint_tasks(const Session& session) {
  if (!session.panel) throw Error(ErrorCode::NoPanel, "no evaluator panel selected");
  if (!session.tree) throw Error(ErrorCode::NoTree, "session has no task tree yet");
  auto evaluators = session.panel->evaluators();
  if (evaluators.empty()) throw Error(ErrorCode::NoPanel, "evaluator panel is empty");
  auto leaves = session.tree->leaves();

  Assignment a;
  for (const auto& leaf : leaves) a.by_node[leaf];
  const std::size_t slots = std::max(leaves.size(), evaluators.size());
  for (std::size_t s = 0; s < slots; ++s) {
    a.by_node[leaves[s % leaves.size()]].push_back(evaluators[s % evaluators.size()]);
  }
  return a;
}

void record_assignment(Session& session, const Assignment& assignment) {
  if (!session.panel) throw Error(ErrorCode::NoPanel, "no evaluator panel selected");
  if (!session.tree) throw Error(ErrorCode::NoTree, "session has no task tree yet");
  auto evaluators = session.panel->evaluators();
  for (const auto& [node, ids] : assignment.by_node) {
    require_node(session, node);
    for (const auto& id : ids) {
      if (std::find(evaluators.begin(), evaluators.end(), id) == evaluators.end()) {
        throw Error(ErrorCode::InvalidPayload, "evaluator '" + id + "' is not on the panel", {{"evaluator", id}});
      }
    }
  }
  commit(session, ev::kAppointed, json{{"assignment", assignment}});
}

void add_element(Session& session, const std::string& node, const ArgumentElement& element) {
  ArgumentBoard trial = require_node(session, node).board;
  trial.add_element(element);
  json e = element;
  e.erase("seq");
  commit(session, ev::kElement, json{{"node", node}, {"element", e}});
}

void relate_elements(Session& session, const std::string& node, const std::string& source,
                     const std::string& target, RelationType type) {
  ArgumentBoard trial = require_node(session, node).board;
  trial.relate(source, target, type);
  commit(session, ev::kRelation,
         json{{"node", node}, {"source", source}, {"target", target}, {"type", to_string(type)}});
}

void unrelate_elements(Session& session, const std::string& node, const std::string& source,
                       const std::string& target) {
  const auto& board = require_node(session, node).board;
  for (const auto& id : {source, target}) {
    if (board.find(id) == nullptr) {
      throw Error(ErrorCode::UnknownElement, "no element '" + id + "' on the board", {{"id", id}});
    }
  }
  commit(session, ev::kUnrelation, json{{"node", node}, {"source", source}, {"target", target}});
}

void advance_stage(Session& session, Stage target) {
  if (!is_legal_transition(session.stage, target)) {
    throw Error(ErrorCode::IllegalTransition,
                "cannot move from " + std::string(to_string(session.stage)) + " to " +
                    std::string(to_string(target)),
                {{"from", to_string(session.stage)}, {"to", to_string(target)}});
  }
  commit(session, ev::kStage, json{{"from", to_string(session.stage)}, {"to", to_string(target)}});
}

void set_matrix(Session& session, const std::string& node, const DecisionMatrix& matrix) {
  require_node(session, node);
  matrix.validate();
  if (matrix.schemes.empty()) throw Error(ErrorCode::TooFewSchemes, "matrix has no schemes");
  commit(session, ev::kMatrix, json{{"node", node}, {"matrix", matrix}});
}

void submit_ranking(Session& session, const std::string& node, const Submission& submission) {
  const NodeWork& work = require_node(session, node);
  if (!work.matrix) throw Error(ErrorCode::MissingMatrix, "node '" + node + "' has no decision matrix", {{"node", node}});
  if (submission.evaluator.empty()) throw Error(ErrorCode::InvalidBallot, "submission needs an evaluator");
  if (submission.ranking.has_value() == submission.scores.has_value()) {
    throw Error(ErrorCode::InvalidPayload, "submit exactly one of 'ranking' or 'scores'");
  }
  if (!(submission.weight >= 0.0)) throw Error(ErrorCode::InvalidBallot, "ballot weight must be non-negative");

  const DecisionMatrix& m = *work.matrix;
  if (submission.ranking) {
    std::set<std::string> ranked(submission.ranking->begin(), submission.ranking->end());
    std::set<std::string> expected(m.schemes.begin(), m.schemes.end());
    if (ranked.size() != submission.ranking->size() || ranked != expected) {
      throw Error(ErrorCode::InvalidBallot, "ranking must be a permutation of the node's schemes",
                  {{"evaluator", submission.evaluator}, {"schemes", m.schemes}});
    }
  } else {
    DecisionMatrix own = m;
    own.scores = *submission.scores;
    own.validate();
  }
  commit(session, ev::kSubmission, json{{"node", node}, {"submission", submission}});
}

void run_group_decision(Session& session, const std::string& node, Semantics semantics,
                        std::size_t extension_bound) {
  if (session.stage != Stage::SchemeSelection) {
    throw Error(ErrorCode::WrongStage, "group decisions run in SchemeSelection",
                {{"stage", to_string(session.stage)}, {"required", to_string(Stage::SchemeSelection)}});
  }
  const NodeWork& work = require_node(session, node);
  if (!work.matrix) throw Error(ErrorCode::MissingMatrix, "node '" + node + "' has no decision matrix", {{"node", node}});
  const DecisionMatrix& matrix = *work.matrix;

  ConsensusRecord record = commit_consensus(work.board, semantics, AttackMappingPolicy::standard(), extension_bound);
  std::set<std::string> vetoed = vetoed_schemes(work.board, record);
  std::vector<std::string> viable;
  for (const auto& id : matrix.schemes) {
    if (!vetoed.count(id)) viable.push_back(id);
  }
  if (viable.empty()) {
    throw Error(ErrorCode::NoViableScheme, "every scheme of node '" + node + "' was vetoed", {{"node", node}});
  }

  auto rank_scores = [&](const std::vector<std::vector<double>>& scores, const std::string& who, double weight) {
    if (viable.size() < 2) return RankingBallot{who, viable, weight};
    DecisionMatrix own = matrix;
    own.scores = scores;
    return flows_to_ballot(promethee2(own.restricted_to(viable)), who, weight);
  };

  std::vector<RankingBallot> ballots;
  for (const auto& [evaluator, sub] : work.submissions) {
    if (sub.ranking) {
      std::vector<std::string> kept;
      for (const auto& id : *sub.ranking) {
        if (!vetoed.count(id)) kept.push_back(id);
      }
      ballots.push_back({evaluator, kept, sub.weight});
    } else {
      ballots.push_back(rank_scores(*sub.scores, evaluator, sub.weight));
    }
  }
  if (ballots.empty()) ballots.push_back(rank_scores(matrix.scores, "matrix", 1.0));

  GroupRanking ranking = borda_aggregate(ballots);

  commit(session, ev::kConsensus, json{{"node", node}, {"record", record}});
  commit(session, ev::kRanked, json{{"node", node}, {"ballots", ballots}, {"ranking", ranking}});
  commit(session, ev::kResult, json{{"node", node}, {"scheme", ranking.ranking.front()}});
}

void record_result(Session& session, const std::string& node, const std::string& scheme) {
  if (!session.tree || session.tree->find(node) == nullptr) {
    throw Error(ErrorCode::UnknownNode, "no task node '" + node + "'", {{"node", node}});
  }
  const NodeWork& work = require_node(session, node);
  if (!work.matrix ||
      std::find(work.matrix->schemes.begin(), work.matrix->schemes.end(), scheme) == work.matrix->schemes.end()) {
    throw Error(ErrorCode::UnknownScheme, "scheme '" + scheme + "' is not in the matrix of node '" + node + "'",
                {{"node", node}, {"scheme", scheme}});
  }
  commit(session, ev::kResult, json{{"node", node}, {"scheme", scheme}});
}

}  // namespace ontogdss
