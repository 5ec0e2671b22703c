#include "ontogdss/engine.hpp"

#include <set>

#include "ontogdss/codec.hpp"

namespace ontogdss {

namespace {

const std::set<std::string>& mutating_verbs() {
  static const std::set<std::string> verbs = {
      "create-session", "annotate", "classify",   "decompose",      "select-panel",
      "appoint",        "add-element", "relate",  "unrelate",       "advance",
      "set-matrix",     "submit-ranking", "run-decision", "record-result",
  };
  return verbs;
}

const std::set<std::string>& read_verbs() {
  static const std::set<std::string> verbs = {"get-session", "get-framework", "get-consensus"};
  return verbs;
}

const json& field(const json& payload, const char* key) {
  if (!payload.is_object() || !payload.contains(key)) {
    throw Error(ErrorCode::InvalidPayload, std::string("payload is missing '") + key + "'", {{"field", key}});
  }
  return payload.at(key);
}

std::string text_field(const json& payload, const char* key) {
  const json& v = field(payload, key);
  if (!v.is_string()) {
    throw Error(ErrorCode::InvalidPayload, std::string("'") + key + "' must be a string", {{"field", key}});
  }
  return v.get<std::string>();
}

json consensus_view(const Session& s, const std::string& node) {
  const NodeWork& work = s.nodes.at(node);
  json out = json::object();
  out["consensus"] = work.consensus ? json(*work.consensus) : json(nullptr);
  out["group_ranking"] = work.group_ranking ? json(*work.group_ranking) : json(nullptr);
  out["ballots"] = work.ballots;
  auto r = s.results.find(node);
  out["result"] = r == s.results.end() ? json(nullptr) : json(r->second);
  if (work.consensus) out["accepted_opinions"] = accepted_opinions(work.board, *work.consensus);
  return out;
}

const NodeWork& node_of(const Session& s, const std::string& node) {
  if (!s.tree) throw Error(ErrorCode::NoTree, "session has no task tree yet");
  const NodeWork* w = s.node_work(node);
  if (w == nullptr) throw Error(ErrorCode::UnknownNode, "no task node '" + node + "'", {{"node", node}});
  return *w;
}

}  // namespace

Command parse_command(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseFailure, "command must be a JSON object");
  Command c;
  auto verb = j.find("verb");
  if (verb == j.end() || !verb->is_string()) throw Error(ErrorCode::ParseFailure, "command needs a string 'verb'");
  c.verb = verb->get<std::string>();
  if (auto s = j.find("session"); s != j.end() && !s->is_null()) {
    if (!s->is_string()) throw Error(ErrorCode::ParseFailure, "'session' must be a string");
    c.session = s->get<std::string>();
  }
  if (auto p = j.find("payload"); p != j.end() && !p->is_null()) {
    if (!p->is_object()) throw Error(ErrorCode::ParseFailure, "'payload' must be an object");
    c.payload = *p;
  }
  return c;
}

json to_json(const Command& command) {
  json j{{"verb", command.verb}, {"payload", command.payload}};
  if (!command.session.empty()) j["session"] = command.session;
  return j;
}

int http_status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::NotFound:
    case ErrorCode::UnknownNode:
      return 404;
    case ErrorCode::IllegalTransition:
    case ErrorCode::WrongStage:
    case ErrorCode::DuplicateId:
      return 409;
    case ErrorCode::IoFailure:
      return 500;
    case ErrorCode::StoreLocked:
      return 503;
    case ErrorCode::ParseFailure:
    case ErrorCode::InvalidPayload:
    case ErrorCode::UnknownVerb:
      return 400;
    default:
      return 422;
  }
}

Response error_response(const Error& error) {
  return {http_status_for(error.code()),
          json{{"error", {{"code", to_string(error.code())}, {"message", error.what()}, {"details", error.details()}}}}};
}

bool is_read_only(const std::string& verb) { return read_verbs().count(verb) > 0; }

Response apply_to_session(Session& session, const Command& command, const EngineConfig& config,
                          const ResourceStore* store) {
  const std::string& verb = command.verb;
  const json& p = command.payload;
  try {
    if (verb == "get-session") {
      return {200, json{{"session", session}}};
    }
    if (verb == "get-framework") {
      std::string node = text_field(p, "node");
      const NodeWork& work = node_of(session, node);
      ArgumentationFramework af = to_dung(work.board);
      json labels = json::object();
      for (const auto& [id, l] : grounded_labelling(af)) labels[id] = to_string(l);
      return {200, json{{"node", node},
                        {"framework", af},
                        {"elements", json(work.board)["elements"]},
                        {"relations", work.board.relations()},
                        {"grounded", labels},
                        {"consensus", work.consensus ? json(*work.consensus) : json(nullptr)}}};
    }
    if (verb == "get-consensus") {
      if (p.contains("node")) {
        std::string node = text_field(p, "node");
        node_of(session, node);
        return {200, json{{"node", node}, {"view", consensus_view(session, node)}}};
      }
      json nodes = json::object();
      for (const auto& [id, work] : session.nodes) nodes[id] = consensus_view(session, id);
      return {200, json{{"session", session.id}, {"stage", to_string(session.stage)}, {"nodes", nodes},
                        {"results", session.results}}};
    }

    if (verb == "annotate") {
      annotate_problem(session, decode<ConceptAssertion>(p, "annotate"));
      return {200, json{{"problem", session.problem}}};
    }
    if (verb == "classify") {
      ResourceStore empty;
      double threshold = p.value("similarity_threshold", config.structured_similarity);
      auto structure = classify_session_problem(session, store ? *store : empty, threshold);
      return {200, json{{"structure", to_string(structure)}}};
    }
    if (verb == "decompose") {
      decompose_problem(session, decode<TaskOutline>(field(p, "outline"), "outline"));
      return {200, json{{"tree", *session.tree}, {"paths", decision_paths(*session.tree)}}};
    }
    if (verb == "select-panel") {
      select_panel(session, decode<GroupPool>(field(p, "pool"), "pool"),
                   decode<std::vector<std::string>>(field(p, "alternatives"), "alternatives"),
                   decode<SelectionStage>(field(p, "stage1"), "stage1"),
                   decode<SelectionStage>(field(p, "stage2"), "stage2"), p.value("k", 1));
      return {200, json{{"panel", *session.panel}}};
    }
    if (verb == "appoint") {
      Assignment a = p.contains("assignment") ? decode<Assignment>(p.at("assignment"), "assignment")
                                              : appoint_tasks(session);
      record_assignment(session, a);
      return {200, json{{"assignment", a}}};
    }
    if (verb == "add-element") {
      std::string node = text_field(p, "node");
      add_element(session, node, decode<ArgumentElement>(field(p, "element"), "element"));
      return {201, json{{"node", node}, {"board", session.nodes.at(node).board}}};
    }
    if (verb == "relate") {
      std::string node = text_field(p, "node");
      auto type = parse_relation_type(text_field(p, "type"));
      if (!type) throw Error(ErrorCode::InvalidPayload, "unknown relation type", {{"type", p.at("type")}});
      relate_elements(session, node, text_field(p, "source"), text_field(p, "target"), *type);
      return {201, json{{"node", node}, {"board", session.nodes.at(node).board}}};
    }
    if (verb == "unrelate") {
      std::string node = text_field(p, "node");
      unrelate_elements(session, node, text_field(p, "source"), text_field(p, "target"));
      return {200, json{{"node", node}, {"board", session.nodes.at(node).board}}};
    }
    if (verb == "advance") {
      auto stage = parse_stage(text_field(p, "stage"));
      if (!stage) throw Error(ErrorCode::InvalidPayload, "unknown stage", {{"stage", p.at("stage")}});
      advance_stage(session, *stage);
      return {200, json{{"stage", to_string(session.stage)}}};
    }
    if (verb == "set-matrix") {
      std::string node = text_field(p, "node");
      DecisionMatrix matrix = p.contains("csv") && !p.contains("matrix")
                                  ? matrix_from_csv(text_field(p, "csv"))
                                  : decode<DecisionMatrix>(field(p, "matrix"), "matrix");
      set_matrix(session, node, matrix);
      return {200, json{{"node", node}, {"matrix", *session.nodes.at(node).matrix}}};
    }
    if (verb == "submit-ranking") {
      std::string node = text_field(p, "node");
      submit_ranking(session, node, decode<Submission>(p, "submission"));
      json subs = json::array();
      for (const auto& [id, s] : session.nodes.at(node).submissions) subs.push_back(s);
      return {201, json{{"node", node}, {"submissions", subs}}};
    }
    if (verb == "run-decision") {
      std::string node = text_field(p, "node");
      Semantics semantics = Semantics::Grounded;
      if (p.contains("semantics")) {
        auto s = parse_semantics(text_field(p, "semantics"));
        if (!s) throw Error(ErrorCode::InvalidPayload, "unknown semantics", {{"semantics", p.at("semantics")}});
        semantics = *s;
      }
      run_group_decision(session, node, semantics, config.extension_bound);
      return {200, json{{"node", node}, {"view", consensus_view(session, node)}}};
    }
    if (verb == "record-result") {
      std::string node = text_field(p, "node");
      record_result(session, node, text_field(p, "scheme"));
      return {200, json{{"results", session.results}}};
    }
    throw Error(ErrorCode::UnknownVerb, "unknown verb '" + verb + "'", {{"verb", verb}});
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return error_response(Error(ErrorCode::InvalidPayload, e.what()));
  }
}

namespace {

Response create(EngineState& state, const Command& command) {
  try {
    const json& p = command.payload;
    std::string id = p.value("id", command.session);
    if (id.empty()) {
      do {
        id = "session-" + std::to_string(state.next_session++);
      } while (state.sessions.count(id));
    }
    if (state.sessions.count(id)) {
      throw Error(ErrorCode::DuplicateId, "session '" + id + "' already exists", {{"id", id}});
    }
    Session s = create_session(id, p.value("title", std::string{}), p.value("description", std::string{}));
    json body{{"session", s}};
    state.sessions.emplace(id, std::move(s));
    return {201, body};
  } catch (const Error& e) {
    return error_response(e);
  } catch (const json::exception& e) {
    return error_response(Error(ErrorCode::InvalidPayload, e.what()));
  }
}

}  // namespace

Response apply_command(EngineState& state, const Command& command, const EngineConfig& config,
                       const ResourceStore* store) {
  if (command.verb == "create-session") return create(state, command);
  if (!mutating_verbs().count(command.verb) && !read_verbs().count(command.verb)) {
    return error_response(Error(ErrorCode::UnknownVerb, "unknown verb '" + command.verb + "'", {{"verb", command.verb}}));
  }
  auto it = state.sessions.find(command.session);
  if (it == state.sessions.end()) {
    return error_response(
        Error(ErrorCode::UnknownSession, "no session '" + command.session + "'", {{"session", command.session}}));
  }
  if (is_read_only(command.verb)) return apply_to_session(it->second, command, config, store);
  Session working = it->second;
  Response r = apply_to_session(working, command, config, store);
  if (r.ok()) it->second = std::move(working);
  return r;
}

std::pair<EngineState, Response> transition(EngineState state, const Command& command) {
  Response r = apply_command(state, command, EngineConfig{}, nullptr);
  return {std::move(state), std::move(r)};
}

json batch_output(const Session& session) {
  json consensus = json::object();
  json rankings = json::object();
  for (const auto& [id, work] : session.nodes) {
    if (work.consensus) consensus[id] = *work.consensus;
    if (work.group_ranking) rankings[id] = *work.group_ranking;
  }
  json out{{"schema_version", kSchemaVersion},
           {"session", session},
           {"stage", to_string(session.stage)},
           {"consensus", consensus},
           {"rankings", rankings},
           {"results", session.results}};
  out["panel"] = session.panel ? json(*session.panel) : json(nullptr);
  return out;
}

BatchResult run_batch(const std::string& document_text, const EngineConfig& config, const ResourceStore* store) {
  BatchResult result;
  EngineState state;
  std::string current;
  json script = json::array();
  try {
    json doc = parse_json(document_text);
    if (!doc.is_object()) throw Error(ErrorCode::ParseFailure, "session document must be an object");
    if (doc.contains("session") && !doc.at("session").is_null()) {
      Session s = session_from_document(doc);
      current = s.id;
      state.sessions.emplace(s.id, std::move(s));
    } else if (doc.value("schema_version", -1) != kSchemaVersion) {
      throw Error(ErrorCode::SchemaMismatch, "session document has an unsupported schema_version");
    }
    if (doc.contains("script")) script = doc.at("script");
    if (!script.is_array()) throw Error(ErrorCode::ParseFailure, "'script' must be an array of commands");
  } catch (const Error& e) {
    result.exit_status = 2;
    result.message = std::string(to_string(e.code())) + ": " + e.what();
    return result;
  }

  for (std::size_t i = 0; i < script.size(); ++i) {
    Response r;
    try {
      Command c = parse_command(script[i]);
      if (c.session.empty() && c.verb != "create-session") c.session = current;
      r = apply_command(state, c, config, store);
      if (r.ok() && c.verb == "create-session") current = r.body["session"]["id"].get<std::string>();
    } catch (const Error& e) {
      r = error_response(e);
    }
    if (!r.ok()) {
      result.exit_status = 1;
      result.failed_command = i + 1;
      const json& err = r.body["error"];
      result.message = "failed at command " + std::to_string(i + 1) + ": " + err["code"].get<std::string>() +
                       ": " + err["message"].get<std::string>();
      return result;
    }
  }

  if (current.empty()) {
    result.output = dump_canonical(json{{"schema_version", kSchemaVersion}, {"session", nullptr}});
  } else {
    result.output = dump_canonical(batch_output(state.sessions.at(current)));
  }
  return result;
}

Engine::Engine(EngineConfig config, std::optional<ResourceStore> store)
    : config_(config), store_(std::move(store)) {
  if (store_) {
    for (const auto& id : store_->session_ids()) {
      auto slot = std::make_shared<Slot>();
      slot->session = store_->load_session(id);
      sessions_.emplace(id, std::move(slot));
    }
  }
}

std::vector<std::string> Engine::session_ids() const {
  std::shared_lock lock(sessions_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, slot] : sessions_) out.push_back(id);
  return out;
}

std::shared_ptr<Engine::Slot> Engine::slot(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response Engine::create(const Command& command) {
  std::unique_lock lock(sessions_mutex_);
  EngineState scratch;
  scratch.next_session = next_session_;
  for (const auto& [id, s] : sessions_) scratch.sessions[id];
  Response r = apply_command(scratch, command, config_, nullptr);
  next_session_ = scratch.next_session;
  if (!r.ok()) return r;
  auto created = decode<Session>(r.body.at("session"), "session");
  try {
    if (store_) {
      std::lock_guard store_lock(store_mutex_);
      store_->save_session(created);
    }
  } catch (const Error& e) {
    return error_response(e);
  }
  auto slot = std::make_shared<Slot>();
  slot->session = std::move(created);
  sessions_.emplace(slot->session.id, std::move(slot));
  return r;
}

Response Engine::apply(const Command& command) {
  if (command.verb == "create-session") return create(command);
  if (!mutating_verbs().count(command.verb) && !read_verbs().count(command.verb)) {
    return error_response(Error(ErrorCode::UnknownVerb, "unknown verb '" + command.verb + "'", {{"verb", command.verb}}));
  }
  auto target = slot(command.session);
  if (!target) {
    return error_response(
        Error(ErrorCode::UnknownSession, "no session '" + command.session + "'", {{"session", command.session}}));
  }
  std::lock_guard lock(target->mutex);
  if (is_read_only(command.verb)) return apply_to_session(target->session, command, config_, nullptr);

  // Resource entries never change behind a live engine, so classification can
  // read the store without the store mutex; only session writes take it.
  Session working = target->session;
  Response r = apply_to_session(working, command, config_, store_ ? &*store_ : nullptr);
  if (r.ok() && store_) {
    try {
      std::lock_guard store_lock(store_mutex_);
      store_->save_session(working);
    } catch (const Error& e) {
      return error_response(e);
    }
  }
  if (r.ok()) target->session = std::move(working);
  return r;
}

}  // namespace ontogdss
