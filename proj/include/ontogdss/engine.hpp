#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontogdss/error.hpp"
#include "ontogdss/resource_store.hpp"
#include "ontogdss/session.hpp"

namespace ontogdss {

/// A single request against the engine.
///
/// Mutating verbs: create-session, annotate, classify, decompose,
/// select-panel, appoint, add-element, relate, unrelate, advance, set-matrix,
/// submit-ranking, run-decision, record-result.
/// Read-only verbs: get-session, get-framework, get-consensus.
struct Command {
  std::string verb;
  std::string session;
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const Command&) const = default;
};

/// Accepts {"verb", "session"?, "payload"?}. Throws ParseFailure.
Command parse_command(const nlohmann::json& j);
nlohmann::json to_json(const Command& command);

struct Response {
  int status = 200;
  nlohmann::json body;

  bool ok() const { return status < 400; }
};

Response error_response(const Error& error);
int http_status_for(ErrorCode code);

bool is_read_only(const std::string& verb);

struct EngineConfig {
  std::size_t extension_bound = kDefaultExtensionBound;
  double structured_similarity = kDefaultStructuredSimilarity;
};

/// Every session the engine knows, plus the counter for generated ids.
struct EngineState {
  std::map<std::string, Session> sessions;
  std::uint64_t next_session = 1;

  bool operator==(const EngineState&) const = default;
};

/// Deterministic transition function. A failed command leaves `state`
/// untouched. `store` backs the classify verb; without one an empty store is
/// used.
Response apply_command(EngineState& state, const Command& command, const EngineConfig& config = {},
                       const ResourceStore* store = nullptr);

/// Value form of apply_command: the next state and the response.
std::pair<EngineState, Response> transition(EngineState state, const Command& command);

/// Applies a session-scoped verb to one session in place.
Response apply_to_session(Session& session, const Command& command, const EngineConfig& config,
                          const ResourceStore* store);

struct BatchResult {
  int exit_status = 0;
  std::string output;
  /// 1-based index of the failing command.
  std::optional<std::size_t> failed_command;
  std::string message;
};

/// Runs the "script" embedded in a session document and renders the final
/// session with its consensus records, group rankings and results.
BatchResult run_batch(const std::string& document_text, const EngineConfig& config = {},
                      const ResourceStore* store = nullptr);

/// Renders the batch output document for `session`.
nlohmann::json batch_output(const Session& session);

/// The four-people, five-group performance-evaluation scenario with its script.
nlohmann::json demo_document();

/// Thread-safe front end used by the C API and the HTTP service. Commands for
/// one session are serialized; distinct sessions run in parallel. When a
/// persistent store is attached every successful mutation is saved.
class Engine {
 public:
  explicit Engine(EngineConfig config = {}, std::optional<ResourceStore> store = std::nullopt);

  Response apply(const Command& command);
  std::vector<std::string> session_ids() const;

 private:
  struct Slot {
    std::mutex mutex;
    Session session;
  };

  Response create(const Command& command);
  std::shared_ptr<Slot> slot(const std::string& id) const;

  EngineConfig config_;
  std::optional<ResourceStore> store_;
  mutable std::mutex store_mutex_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t next_session_ = 1;
};

}  // namespace ontogdss
