#include "httplib.h"

#include "CLI11.hpp"
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "http_service.hpp"
#include "ontogdss/ontogdss.h"

namespace {

httplib::Server* running = nullptr;

void on_signal(int) {
  if (running != nullptr) running->stop();
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' ? std::string(v) : fallback;
}

bool read_text(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout.flush());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out.flush());
}

int serve(std::string bind, std::string store) {
  bind = env_or("ONTOGDSS_BIND", bind);
  store = env_or("ONTOGDSS_STORE", store);

  std::string host = bind;
  int port = 8080;
  if (auto colon = bind.rfind(':'); colon != std::string::npos) {
    host = bind.substr(0, colon);
    try {
      port = std::stoi(bind.substr(colon + 1));
    } catch (const std::exception&) {
      std::cerr << "ontogdss: invalid bind address '" << bind << "'\n";
      return 2;
    }
  }
  if (host.empty()) host = "0.0.0.0";

  ontogdss_engine* engine = nullptr;
  if (ontogdss_engine_new(store.empty() ? nullptr : store.c_str(), nullptr, &engine) != ONTOGDSS_OK) {
    std::cerr << "ontogdss: " << ontogdss_last_error() << "\n";
    return 2;
  }

  httplib::Server server;
  ontogdss::http::mount(server, engine);
  running = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  std::cerr << "ontogdss " << ontogdss_version() << " listening on " << host << ":" << port
            << (store.empty() ? " (in-memory)" : " store=" + store) << "\n";
  bool ok = server.listen(host, port);
  running = nullptr;
  ontogdss_engine_free(engine);
  if (!ok) {
    std::cerr << "ontogdss: cannot listen on " << host << ":" << port << "\n";
    return 2;
  }
  return 0;
}

int run(const std::string& input, const std::string& output) {
  std::string doc;
  if (!read_text(input, doc)) {
    std::cerr << "ontogdss: cannot read " << input << "\n";
    return 2;
  }
  char* out = nullptr;
  size_t failed = 0;
  ontogdss_status st = ontogdss_run_batch(doc.c_str(), &out, &failed);
  if (st != ONTOGDSS_OK) {
    std::cerr << "ontogdss: " << ontogdss_last_error() << "\n";
    return st == ONTOGDSS_E_COMMAND ? 1 : 2;
  }
  bool ok = write_text(output, out);
  ontogdss_string_free(out);
  if (!ok) {
    std::cerr << "ontogdss: cannot write " << output << "\n";
    return 2;
  }
  return 0;
}

int demo(const std::string& output) {
  char* doc = nullptr;
  if (ontogdss_demo_document(&doc) != ONTOGDSS_OK) {
    std::cerr << "ontogdss: " << ontogdss_last_error() << "\n";
    return 2;
  }
  bool ok = write_text(output, doc);
  ontogdss_string_free(doc);
  if (!ok) {
    std::cerr << "ontogdss: cannot write " << output << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ontology-driven group decision support engine"};
  app.set_version_flag("--version", std::string(ontogdss_version()));
  app.require_subcommand(1);

  std::string bind = "127.0.0.1:8080";
  std::string store;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--bind", bind, "host:port to listen on (ONTOGDSS_BIND overrides)")->capture_default_str();
  serve_cmd->add_option("--store", store, "Store directory (ONTOGDSS_STORE overrides); in-memory when empty");

  std::string input;
  std::string run_output;
  auto* run_cmd = app.add_subcommand("run", "Execute the script embedded in a session document");
  run_cmd->add_option("session", input, "Session document")->required();
  run_cmd->add_option("-o,--output", run_output, "Output file (stdout when omitted)");

  std::string demo_output;
  auto* demo_cmd = app.add_subcommand("demo", "Write the bundled demo session document");
  demo_cmd->add_option("-o,--output", demo_output, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (*serve_cmd) return serve(bind, store);
  if (*run_cmd) return run(input, run_output);
  if (*demo_cmd) return demo(demo_output);
  return 0;
}
