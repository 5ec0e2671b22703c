#include "http_service.hpp"

#include <regex>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace ontogdss::http {

namespace {

using json = nlohmann::json;

json error_body(const std::string& code, const std::string& message) {
  return json{{"error", {{"code", code}, {"message", message}, {"details", json::object()}}}};
}

Reply reply(int status, const json& body) { return {status, body.dump()}; }

// How the request body becomes the command payload.
enum class Body {
  Ignore,
  Object,       // used as the payload
  Wrap,         // nested under `key` unless it already carries it
};

struct Route {
  std::string method;
  std::regex pattern;
  std::string verb;
  Body body;
  std::string key;
};

const std::vector<Route>& routes() {
  static const std::string id = "([A-Za-z0-9_][A-Za-z0-9._-]*)";
  static const std::vector<Route> table = {
      {"POST", std::regex("/sessions"), "create-session", Body::Object, ""},
      {"GET", std::regex("/sessions/" + id), "get-session", Body::Ignore, ""},
      {"POST", std::regex("/sessions/" + id + "/annotations"), "annotate", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/classify"), "classify", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/tree"), "decompose", Body::Wrap, "outline"},
      {"POST", std::regex("/sessions/" + id + "/panel"), "select-panel", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/appoint"), "appoint", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/advance"), "advance", Body::Object, ""},
      {"GET", std::regex("/sessions/" + id + "/consensus"), "get-consensus", Body::Ignore, ""},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/elements"), "add-element", Body::Wrap, "element"},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/relations"), "relate", Body::Object, ""},
      {"DELETE", std::regex("/sessions/" + id + "/nodes/" + id + "/relations"), "unrelate", Body::Object, ""},
      {"GET", std::regex("/sessions/" + id + "/nodes/" + id + "/framework"), "get-framework", Body::Ignore, ""},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/matrix"), "set-matrix", Body::Wrap, "matrix"},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/rankings"), "submit-ranking", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/decide"), "run-decision", Body::Object, ""},
      {"POST", std::regex("/sessions/" + id + "/nodes/" + id + "/result"), "record-result", Body::Object, ""},
      {"GET", std::regex("/sessions/" + id + "/nodes/" + id + "/consensus"), "get-consensus", Body::Ignore, ""},
  };
  return table;
}

}  // namespace

Reply handle(ontogdss_engine* engine, const std::string& method, const std::string& path, const std::string& body,
             const std::string& content_type) {
  const Route* route = nullptr;
  std::smatch match;
  bool path_known = false;
  for (const auto& r : routes()) {
    if (!std::regex_match(path, match, r.pattern)) continue;
    path_known = true;
    if (r.method == method) {
      route = &r;
      break;
    }
  }
  if (route == nullptr) {
    if (path_known) return reply(405, error_body("MethodNotAllowed", method + " is not supported on " + path));
    return reply(404, error_body("NotFound", "no route for " + path));
  }

  json payload = json::object();
  if (route->verb == "set-matrix" && content_type.rfind("text/csv", 0) == 0) {
    payload["csv"] = body;
  } else if (route->body != Body::Ignore && body.find_first_not_of(" \t\r\n") != std::string::npos) {
    json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      return reply(400, error_body("ParseFailure", "request body must be a JSON object"));
    }
    if (route->body == Body::Wrap && !parsed.contains(route->key)) {
      payload[route->key] = std::move(parsed);
    } else {
      payload = std::move(parsed);
    }
  }

  json command{{"verb", route->verb}};
  if (match.size() > 1) command["session"] = match[1].str();
  if (match.size() > 2) payload["node"] = match[2].str();
  command["payload"] = std::move(payload);

  char* out = nullptr;
  ontogdss_engine_apply(engine, command.dump().c_str(), &out);
  if (out == nullptr) return reply(500, error_body("Internal", ontogdss_last_error()));
  json response = json::parse(out);
  ontogdss_string_free(out);
  return reply(response.at("status").get<int>(), response.at("body"));
}

void mount(httplib::Server& server, ontogdss_engine* engine) {
  auto serve = [engine](const httplib::Request& req, httplib::Response& res) {
    Reply r = handle(engine, req.method, req.path, req.body, req.get_header_value("Content-Type"));
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Get(".*", serve);
  server.Post(".*", serve);
  server.Delete(".*", serve);
  server.Put(".*", serve);
}

}  // namespace ontogdss::http
