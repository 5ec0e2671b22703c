#include "ontogdss/codec.hpp"

#include <functional>
#include <set>

namespace ontogdss {

namespace {

template <typename Enum, typename Parser>
Enum parse_enum(const json& j, Parser parse, std::string_view what) {
  if (!j.is_string()) {
    throw Error(ErrorCode::InvalidPayload, std::string(what) + " must be a string");
  }
  auto text = j.get<std::string>();
  auto value = parse(text);
  if (!value) {
    throw Error(ErrorCode::InvalidPayload, "unknown " + std::string(what) + " '" + text + "'",
                {{"field", what}, {"value", text}});
  }
  return *value;
}

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
  if (value) j[key] = *value;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->template get<T>();
  }
}

template <typename T>
T value_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->template get<T>();
}

const json& required(const json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidPayload, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::InvalidPayload, std::string("missing field '") + key + "'", {{"field", key}});
  }
  return *it;
}

}  // namespace

void to_json(json& j, const ConceptAssertion& v) {
  j = json{{"kind", to_string(v.kind)}, {"label", v.label}, {"quantitative", v.quantitative}};
  put_optional(j, "value", v.value);
}

void from_json(const json& j, ConceptAssertion& v) {
  v.kind = parse_enum<ConceptKind>(required(j, "kind"), parse_concept_kind, "concept kind");
  v.label = required(j, "label").get<std::string>();
  get_optional(j, "value", v.value);
  v.quantitative = value_or(j, "quantitative", false);
}

void to_json(json& j, const ConceptAnnotation& v) { j = v.all(); }

void from_json(const json& j, ConceptAnnotation& v) {
  v = ConceptAnnotation{};
  for (const auto& item : j) v.put(item.get<ConceptAssertion>());
}

void to_json(json& j, const DecisionProblem& v) {
  j = json{{"id", v.id},
           {"title", v.title},
           {"description", v.description},
           {"annotation", v.annotation},
           {"structure", to_string(v.structure)}};
}

void from_json(const json& j, DecisionProblem& v) {
  v.id = value_or<std::string>(j, "id", "");
  v.title = value_or<std::string>(j, "title", "");
  v.description = value_or<std::string>(j, "description", "");
  v.annotation = value_or(j, "annotation", ConceptAnnotation{});
  v.structure = j.contains("structure")
                    ? parse_enum<ProblemStructure>(j.at("structure"), parse_problem_structure, "structure")
                    : ProblemStructure::NonStructured;
}

void to_json(json& j, const TaskNode& v) {
  j = json{{"id", v.id}, {"label", v.label}, {"annotation", v.annotation}, {"children", v.children}};
  put_optional(j, "solved_scheme", v.solved_scheme);
}

void from_json(const json& j, TaskNode& v) {
  v.id = required(j, "id").get<std::string>();
  v.label = value_or<std::string>(j, "label", v.id);
  v.annotation = value_or(j, "annotation", ConceptAnnotation{});
  v.children.clear();
  get_optional(j, "solved_scheme", v.solved_scheme);
  if (auto it = j.find("children"); it != j.end()) {
    for (const auto& c : *it) v.children.push_back(c.is_string() ? c.get<std::string>() : c.at("id").get<std::string>());
  }
}

// Trees are written as nested node objects rooted at "root".
void to_json(json& j, const TaskTree& v) {
  std::set<std::string> seen;
  std::function<json(const std::string&)> nest = [&](const std::string& id) {
    const TaskNode* node = v.find(id);
    json out = json{{"id", id}};
    if (node == nullptr || !seen.insert(id).second) return out;
    out["label"] = node->label;
    out["annotation"] = node->annotation;
    put_optional(out, "solved_scheme", node->solved_scheme);
    json children = json::array();
    for (const auto& c : node->children) children.push_back(nest(c));
    out["children"] = std::move(children);
    return out;
  };
  j = json{{"root", nest(v.root)}};
}

void from_json(const json& j, TaskTree& v) {
  v = TaskTree{};
  std::function<void(const json&)> flatten = [&](const json& item) {
    TaskNode node = item.get<TaskNode>();
    if (!v.nodes.emplace(node.id, node).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate task node id '" + node.id + "'", {{"id", node.id}});
    }
    if (auto it = item.find("children"); it != item.end()) {
      for (const auto& c : *it) {
        if (c.is_object()) flatten(c);
      }
    }
  };
  const json& root = required(j, "root");
  v.root = required(root, "id").get<std::string>();
  flatten(root);
}

void to_json(json& j, const TaskOutline& v) {
  j = json{{"id", v.id}, {"label", v.label}, {"annotation", v.annotation}, {"children", v.children}};
}

void from_json(const json& j, TaskOutline& v) {
  v.id = value_or<std::string>(j, "id", "");
  v.label = value_or<std::string>(j, "label", "");
  v.annotation = value_or(j, "annotation", ConceptAnnotation{});
  v.children = value_or(j, "children", std::vector<TaskOutline>{});
}

void to_json(json& j, const DecisionMaker& v) {
  j = json{{"id", v.id}, {"name", v.name}, {"group", v.group}, {"attributes", v.attributes}};
}

void from_json(const json& j, DecisionMaker& v) {
  v.id = required(j, "id").get<std::string>();
  v.name = value_or<std::string>(j, "name", v.id);
  v.group = value_or<std::string>(j, "group", "");
  v.attributes = value_or(j, "attributes", std::map<std::string, Scalar>{});
}

void to_json(json& j, const EvaluatorGroup& v) { j = json{{"id", v.id}, {"members", v.members}}; }

void from_json(const json& j, EvaluatorGroup& v) {
  v.id = required(j, "id").get<std::string>();
  v.members = value_or(j, "members", std::vector<DecisionMaker>{});
  for (auto& m : v.members) m.group = v.id;
}

void to_json(json& j, const GroupPool& v) { j = json{{"groups", v.groups}}; }

void from_json(const json& j, GroupPool& v) { v.groups = required(j, "groups").get<std::vector<EvaluatorGroup>>(); }

void to_json(json& j, const SelectionCriterion& v) {
  j = json{{"attribute", v.attribute}, {"admissible", v.admissible}, {"weight", v.weight}};
  put_optional(j, "min", v.min);
  put_optional(j, "max", v.max);
}

void from_json(const json& j, SelectionCriterion& v) {
  v.attribute = required(j, "attribute").get<std::string>();
  v.admissible = value_or(j, "admissible", std::vector<Scalar>{});
  if (auto it = j.find("target"); it != j.end()) v.admissible.push_back(it->get<Scalar>());
  get_optional(j, "min", v.min);
  get_optional(j, "max", v.max);
  v.weight = value_or(j, "weight", 1.0);
}

void to_json(json& j, const SelectionStage& v) { j = json{{"criteria", v.criteria}, {"threshold", v.threshold}}; }

void from_json(const json& j, SelectionStage& v) {
  v.criteria = required(j, "criteria").get<std::vector<SelectionCriterion>>();
  v.threshold = value_or(j, "threshold", 0.0);
}

void to_json(json& j, const GroupSelection& v) { j = json{{"group", v.group}, {"evaluators", v.evaluators}}; }

void from_json(const json& j, GroupSelection& v) {
  v.group = required(j, "group").get<std::string>();
  v.evaluators = required(j, "evaluators").get<std::vector<std::string>>();
}

void to_json(json& j, const AlternativePanel& v) { j = json{{"alternative", v.alternative}, {"groups", v.groups}}; }

void from_json(const json& j, AlternativePanel& v) {
  v.alternative = required(j, "alternative").get<std::string>();
  v.groups = required(j, "groups").get<std::vector<GroupSelection>>();
}

void to_json(json& j, const EvaluatorPanel& v) { j = json{{"alternatives", v.alternatives}}; }

void from_json(const json& j, EvaluatorPanel& v) {
  v.alternatives = required(j, "alternatives").get<std::vector<AlternativePanel>>();
}

void to_json(json& j, const ArgumentElement& v) {
  j = json{{"id", v.id}, {"author", v.author}, {"kind", to_string(v.kind)}, {"text", v.text}, {"seq", v.seq}};
  put_optional(j, "scheme", v.scheme);
}

void from_json(const json& j, ArgumentElement& v) {
  v.id = required(j, "id").get<std::string>();
  v.author = value_or<std::string>(j, "author", "");
  v.kind = j.contains("kind") ? parse_enum<ElementKind>(j.at("kind"), parse_element_kind, "element kind")
                              : ElementKind::Opinion;
  v.text = value_or<std::string>(j, "text", "");
  v.seq = value_or<std::uint64_t>(j, "seq", 0);
  get_optional(j, "scheme", v.scheme);
}

void to_json(json& j, const ArgRelation& v) {
  j = json{{"source", v.source}, {"target", v.target}, {"type", to_string(v.type)}};
}

void from_json(const json& j, ArgRelation& v) {
  v.source = required(j, "source").get<std::string>();
  v.target = required(j, "target").get<std::string>();
  v.type = parse_enum<RelationType>(required(j, "type"), parse_relation_type, "relation type");
}

void to_json(json& j, const ArgumentBoard& v) {
  json elements = json::array();
  for (const auto& [id, e] : v.elements()) elements.push_back(e);
  j = json{{"elements", elements}, {"relations", v.relations()}, {"next_seq", v.next_seq()}};
}

void from_json(const json& j, ArgumentBoard& v) {
  v = ArgumentBoard::restore(value_or(j, "elements", std::vector<ArgumentElement>{}),
                             value_or(j, "relations", std::vector<ArgRelation>{}),
                             value_or<std::uint64_t>(j, "next_seq", 1));
}

void to_json(json& j, const ArgumentationFramework& v) {
  json attacks = json::array();
  for (const auto& [from, to] : v.attacks) attacks.push_back(json::array({from, to}));
  j = json{{"arguments", v.arguments}, {"attacks", attacks}, {"adjacency", v.adjacency()}};
}

void to_json(json& j, const ConsensusRecord& v) {
  j = json{{"accepted", v.accepted},
           {"rejected", v.rejected},
           {"undecided", v.undecided},
           {"semantics", to_string(v.semantics)},
           {"committed_at", v.committed_at}};
}

void from_json(const json& j, ConsensusRecord& v) {
  v.accepted = required(j, "accepted").get<std::vector<std::string>>();
  v.rejected = required(j, "rejected").get<std::vector<std::string>>();
  v.undecided = required(j, "undecided").get<std::vector<std::string>>();
  v.semantics = parse_enum<Semantics>(required(j, "semantics"), parse_semantics, "semantics");
  v.committed_at = value_or<std::uint64_t>(j, "committed_at", 0);
}

void to_json(json& j, const PreferenceFunction& v) {
  if (v.shape == PreferenceFunction::Shape::Usual) {
    j = json{{"shape", "Usual"}};
  } else {
    j = json{{"shape", "Linear"}, {"q", v.q}, {"p", v.p}};
  }
}

void from_json(const json& j, PreferenceFunction& v) {
  auto shape = value_or<std::string>(j, "shape", "Usual");
  if (shape == "Usual") {
    v = PreferenceFunction::usual();
  } else if (shape == "Linear") {
    v = PreferenceFunction::linear(value_or(j, "q", 0.0), required(j, "p").get<double>());
  } else {
    throw Error(ErrorCode::InvalidPayload, "unknown preference shape '" + shape + "'");
  }
}

void to_json(json& j, const CriterionSpec& v) {
  j = json{{"name", v.name},
           {"direction", to_string(v.direction)},
           {"weight", v.weight},
           {"preference", v.preference},
           {"discordance_scale", v.discordance_scale}};
}

void from_json(const json& j, CriterionSpec& v) {
  v.name = required(j, "name").get<std::string>();
  v.direction = j.contains("direction") ? parse_enum<Direction>(j.at("direction"), parse_direction, "direction")
                                        : Direction::Maximize;
  v.weight = value_or(j, "weight", 1.0);
  v.preference = value_or(j, "preference", PreferenceFunction{});
  v.discordance_scale = value_or(j, "discordance_scale", 1.0);
}

void to_json(json& j, const DecisionMatrix& v) {
  j = json{{"schemes", v.schemes}, {"criteria", v.criteria}, {"scores", v.scores}};
}

void from_json(const json& j, DecisionMatrix& v) {
  v.schemes = required(j, "schemes").get<std::vector<std::string>>();
  v.criteria = required(j, "criteria").get<std::vector<CriterionSpec>>();
  v.scores = required(j, "scores").get<std::vector<std::vector<double>>>();
}

void to_json(json& j, const RankingBallot& v) {
  j = json{{"evaluator", v.evaluator}, {"ranking", v.ranking}, {"weight", v.weight}};
}

void from_json(const json& j, RankingBallot& v) {
  v.evaluator = value_or<std::string>(j, "evaluator", "");
  v.ranking = required(j, "ranking").get<std::vector<std::string>>();
  v.weight = value_or(j, "weight", 1.0);
}

void to_json(json& j, const GroupRanking& v) {
  json scores = json::array();
  for (const auto& [id, s] : v.scores) scores.push_back(json{{"scheme", id}, {"score", s}});
  j = json{{"ranking", v.ranking}, {"scores", scores}};
}

void from_json(const json& j, GroupRanking& v) {
  v.ranking = required(j, "ranking").get<std::vector<std::string>>();
  v.scores.clear();
  for (const auto& s : required(j, "scores")) {
    v.scores.emplace_back(s.at("scheme").get<std::string>(), s.at("score").get<double>());
  }
}

void to_json(json& j, const FlowResult& v) {
  json flows = json::array();
  for (std::size_t i = 0; i < v.schemes.size(); ++i) {
    flows.push_back(json{{"scheme", v.schemes[i]},
                         {"positive", v.positive[i]},
                         {"negative", v.negative[i]},
                         {"net", v.net[i]}});
  }
  j = json{{"flows", flows}, {"ranking", v.ranking}};
}

void to_json(json& j, const OutrankingResult& v) {
  json outranks = json::array();
  for (const auto& [a, b] : v.outranks) outranks.push_back(json::array({a, b}));
  j = json{{"schemes", v.schemes},
           {"concordance", v.concordance},
           {"discordance", v.discordance},
           {"outranks", outranks},
           {"kernel", v.kernel}};
}

void to_json(json& j, const Assignment& v) { j = v.by_node; }

void from_json(const json& j, Assignment& v) {
  v.by_node = j.get<std::map<std::string, std::vector<std::string>>>();
}

void to_json(json& j, const Submission& v) {
  j = json{{"evaluator", v.evaluator}, {"weight", v.weight}};
  put_optional(j, "ranking", v.ranking);
  put_optional(j, "scores", v.scores);
}

void from_json(const json& j, Submission& v) {
  v.evaluator = required(j, "evaluator").get<std::string>();
  v.weight = value_or(j, "weight", 1.0);
  get_optional(j, "ranking", v.ranking);
  get_optional(j, "scores", v.scores);
}

void to_json(json& j, const NodeWork& v) {
  json submissions = json::array();
  for (const auto& [id, s] : v.submissions) submissions.push_back(s);
  j = json{{"board", v.board}, {"submissions", submissions}, {"ballots", v.ballots}};
  put_optional(j, "matrix", v.matrix);
  put_optional(j, "consensus", v.consensus);
  put_optional(j, "group_ranking", v.group_ranking);
}

void from_json(const json& j, NodeWork& v) {
  v.board = value_or(j, "board", ArgumentBoard{});
  v.submissions.clear();
  for (auto& s : value_or(j, "submissions", std::vector<Submission>{})) {
    std::string id = s.evaluator;
    v.submissions.insert_or_assign(std::move(id), std::move(s));
  }
  v.ballots = value_or(j, "ballots", std::vector<RankingBallot>{});
  get_optional(j, "matrix", v.matrix);
  get_optional(j, "consensus", v.consensus);
  get_optional(j, "group_ranking", v.group_ranking);
}

void to_json(json& j, const Event& v) { j = json{{"seq", v.seq}, {"type", v.type}, {"data", v.data}}; }

void from_json(const json& j, Event& v) {
  v.seq = required(j, "seq").get<std::uint64_t>();
  v.type = required(j, "type").get<std::string>();
  v.data = value_or(j, "data", json::object());
}

void to_json(json& j, const Session& v) {
  j = json{{"id", v.id},
           {"problem", v.problem},
           {"alternatives", v.alternatives},
           {"nodes", v.nodes},
           {"stage", to_string(v.stage)},
           {"results", v.results},
           {"log", v.log}};
  put_optional(j, "tree", v.tree);
  put_optional(j, "pool", v.pool);
  put_optional(j, "panel", v.panel);
  put_optional(j, "assignment", v.assignment);
}

void from_json(const json& j, Session& v) {
  v.id = required(j, "id").get<std::string>();
  v.problem = value_or(j, "problem", DecisionProblem{});
  v.alternatives = value_or(j, "alternatives", std::vector<std::string>{});
  v.nodes = value_or(j, "nodes", std::map<std::string, NodeWork>{});
  v.stage = j.contains("stage") ? parse_enum<Stage>(j.at("stage"), parse_stage, "stage") : Stage::ProblemProduction;
  v.results = value_or(j, "results", std::map<std::string, std::string>{});
  v.log = value_or(j, "log", std::vector<Event>{});
  get_optional(j, "tree", v.tree);
  get_optional(j, "pool", v.pool);
  get_optional(j, "panel", v.panel);
  get_optional(j, "assignment", v.assignment);
}

void to_json(json& j, const ResourceEntry& v) {
  j = json{{"id", v.id}, {"kind", to_string(v.kind)}, {"annotation", v.annotation}, {"payload", v.payload}};
}

void from_json(const json& j, ResourceEntry& v) {
  v.id = required(j, "id").get<std::string>();
  v.kind = parse_enum<ResourceKind>(required(j, "kind"), parse_resource_kind, "resource kind");
  v.annotation = value_or(j, "annotation", ConceptAnnotation{});
  v.payload = value_or(j, "payload", json(nullptr));
}

json session_document(const Session& session) {
  return json{{"schema_version", kSchemaVersion}, {"session", session}};
}

Session session_from_document(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseFailure, "session document must be an object");
  auto it = doc.find("schema_version");
  if (it == doc.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::SchemaMismatch, "session document has no integer schema_version");
  }
  if (it->get<long long>() != kSchemaVersion) {
    throw Error(ErrorCode::SchemaMismatch,
                "unsupported schema_version " + std::to_string(it->get<long long>()),
                {{"expected", kSchemaVersion}, {"found", *it}});
  }
  return decode<Session>(required(doc, "session"), "session");
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseFailure, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace ontogdss

void nlohmann::adl_serializer<ontogdss::Scalar>::to_json(json& j, const ontogdss::Scalar& v) {
  std::visit([&](const auto& x) { j = x; }, v);
}

void nlohmann::adl_serializer<ontogdss::Scalar>::from_json(const json& j, ontogdss::Scalar& v) {
  if (j.is_number()) {
    v = j.get<double>();
  } else if (j.is_string()) {
    v = j.get<std::string>();
  } else {
    throw ontogdss::Error(ontogdss::ErrorCode::InvalidPayload, "scalar must be a number or a string");
  }
}
