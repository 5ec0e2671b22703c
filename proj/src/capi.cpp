#include "ontogdss/ontogdss.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "ontogdss/codec.hpp"
#include "ontogdss/engine.hpp"

struct ontogdss_engine {
  std::unique_ptr<ontogdss::Engine> engine;
};

namespace {

thread_local std::string last_error;

char* duplicate(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out != nullptr) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

ontogdss_status fail(ontogdss_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

ontogdss_status status_for(ontogdss::ErrorCode code) {
  using ontogdss::ErrorCode;
  switch (code) {
    case ErrorCode::ParseFailure:
    case ErrorCode::SchemaMismatch:
      return ONTOGDSS_E_PARSE;
    case ErrorCode::IoFailure:
    case ErrorCode::StoreLocked:
    case ErrorCode::NotFound:
      return ONTOGDSS_E_IO;
    default:
      return ONTOGDSS_E_COMMAND;
  }
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
ontogdss_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const ontogdss::Error& e) {
    return fail(status_for(e.code()), std::string(ontogdss::to_string(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(ONTOGDSS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ONTOGDSS_E_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* ontogdss_version(void) { return "1.0.0"; }

const char* ontogdss_last_error(void) { return last_error.c_str(); }

void ontogdss_string_free(char* str) { std::free(str); }

ontogdss_status ontogdss_engine_new(const char* store_dir, const char* config_json, ontogdss_engine** out) {
  if (out == nullptr) return fail(ONTOGDSS_E_INVALID_ARGUMENT, "out must not be NULL");
  *out = nullptr;
  return guarded([&] {
    ontogdss::EngineConfig config;
    if (config_json != nullptr) {
      auto j = ontogdss::parse_json(config_json);
      config.extension_bound = j.value("extension_bound", config.extension_bound);
      config.structured_similarity = j.value("structured_similarity", config.structured_similarity);
      if (config.extension_bound < 1) return fail(ONTOGDSS_E_INVALID_ARGUMENT, "extension_bound must be >= 1");
    }
    std::optional<ontogdss::ResourceStore> store;
    if (store_dir != nullptr && *store_dir != '\0') store = ontogdss::ResourceStore::open(store_dir);
    auto handle = std::make_unique<ontogdss_engine>();
    handle->engine = std::make_unique<ontogdss::Engine>(config, std::move(store));
    *out = handle.release();
    return ONTOGDSS_OK;
  });
}

void ontogdss_engine_free(ontogdss_engine* engine) { delete engine; }

ontogdss_status ontogdss_engine_apply(ontogdss_engine* engine, const char* command_json, char** response_json) {
  if (engine == nullptr || command_json == nullptr || response_json == nullptr) {
    return fail(ONTOGDSS_E_INVALID_ARGUMENT, "engine, command_json and response_json must not be NULL");
  }
  *response_json = nullptr;
  return guarded([&] {
    auto command = ontogdss::parse_command(ontogdss::parse_json(command_json));
    ontogdss::Response r = engine->engine->apply(command);
    *response_json = duplicate(nlohmann::json{{"status", r.status}, {"body", r.body}}.dump());
    if (*response_json == nullptr) return fail(ONTOGDSS_E_INTERNAL, "out of memory");
    if (!r.ok()) {
      const auto& err = r.body.at("error");
      return fail(ONTOGDSS_E_COMMAND, err.at("code").get<std::string>() + ": " + err.at("message").get<std::string>());
    }
    return ONTOGDSS_OK;
  });
}

ontogdss_status ontogdss_run_batch(const char* document_json, char** output_json, size_t* failed_command) {
  if (failed_command != nullptr) *failed_command = 0;
  if (document_json == nullptr || output_json == nullptr) {
    return fail(ONTOGDSS_E_INVALID_ARGUMENT, "document_json and output_json must not be NULL");
  }
  *output_json = nullptr;
  return guarded([&] {
    ontogdss::BatchResult r = ontogdss::run_batch(document_json);
    if (r.exit_status == 2) return fail(ONTOGDSS_E_PARSE, r.message);
    if (r.exit_status != 0) {
      if (failed_command != nullptr && r.failed_command) *failed_command = *r.failed_command;
      return fail(ONTOGDSS_E_COMMAND, r.message);
    }
    *output_json = duplicate(r.output);
    return *output_json == nullptr ? fail(ONTOGDSS_E_INTERNAL, "out of memory") : ONTOGDSS_OK;
  });
}

ontogdss_status ontogdss_demo_document(char** document_json) {
  if (document_json == nullptr) return fail(ONTOGDSS_E_INVALID_ARGUMENT, "document_json must not be NULL");
  *document_json = nullptr;
  return guarded([&] {
    *document_json = duplicate(ontogdss::dump_canonical(ontogdss::demo_document()));
    return *document_json == nullptr ? fail(ONTOGDSS_E_INTERNAL, "out of memory") : ONTOGDSS_OK;
  });
}

}  // extern "C"
