#include <fcntl.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli() {
  const char* p = std::getenv("ONTOGDSS_CLI");
  REQUIRE(p != nullptr);
  return p;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ontogdss-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  int status = std::system((cli() + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int free_port() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

}  // namespace

TEST_CASE("demo then run") {
  TempDir dir;
  REQUIRE(run("demo -o " + (dir / "demo.json")) == 0);
  REQUIRE(run("run " + (dir / "demo.json") + " -o " + (dir / "out1.json")) == 0);
  REQUIRE(run("run " + (dir / "demo.json") + " -o " + (dir / "out2.json")) == 0);
  auto first = slurp(dir / "out1.json");
  CHECK(first == slurp(dir / "out2.json"));

  auto out = json::parse(first);
  CHECK(out["stage"] == "GeneralApplication");
  std::size_t selections = 0;
  for (const auto& alt : out["panel"]["alternatives"]) {
    std::size_t per_alt = 0;
    for (const auto& g : alt["groups"]) per_alt += g["evaluators"].size();
    CHECK(per_alt == 5);
    selections += per_alt;
  }
  CHECK(selections == 20);
  CHECK(out["results"].size() == 2);

  REQUIRE(run("demo > " + (dir / "stdout.json")) == 0);
  CHECK(slurp(dir / "stdout.json") == slurp(dir / "demo.json"));
}

TEST_CASE("failing scripts") {
  TempDir dir;
  json doc = {{"schema_version", 1},
              {"script",
               {{{"verb", "create-session"}, {"payload", {{"id", "s"}}}},
                {{"verb", "advance"}, {"payload", {{"stage", "PropertiesAnalysis"}}}},
                {{"verb", "advance"}, {"payload", {{"stage", "SchemeSelection"}}}}}}};
  std::ofstream(dir / "bad.json") << doc.dump();
  CHECK(run("run " + (dir / "bad.json") + " -o " + (dir / "out.json") + " 2> " + (dir / "err.txt")) == 1);
  CHECK(slurp(dir / "err.txt").find("failed at command 3: IllegalTransition") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out.json"));

  std::ofstream(dir / "broken.json") << "{";
  CHECK(run("run " + (dir / "broken.json") + " 2> /dev/null") == 2);
  CHECK(run("run " + (dir / "missing.json") + " 2> /dev/null") == 2);
  CHECK(run("bogus 2> /dev/null") != 0);
}

TEST_CASE("version") {
  TempDir dir;
  CHECK(run("--version > " + (dir / "v.txt")) == 0);
  CHECK(slurp(dir / "v.txt").find('.') != std::string::npos);
}

TEST_CASE("serve honours the environment and stops on SIGTERM") {
  TempDir dir;
  int port = free_port();
  std::string bind = "127.0.0.1:" + std::to_string(port);
  std::string store = dir / "store";
  std::string exe = cli();

  pid_t pid = ::fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    ::setenv("ONTOGDSS_BIND", bind.c_str(), 1);
    ::setenv("ONTOGDSS_STORE", store.c_str(), 1);
    ::dup2(::open("/dev/null", O_WRONLY), STDERR_FILENO);
    // The flags point elsewhere; the environment wins.
    ::execl(exe.c_str(), exe.c_str(), "serve", "--bind", "127.0.0.1:1", "--store", "/nonexistent/x", nullptr);
    std::_Exit(127);
  }

  httplib::Client client("127.0.0.1", port);
  httplib::Result created;
  for (int i = 0; i < 100 && !created; ++i) {
    created = client.Post("/sessions", R"({"id":"live"})", "application/json");
    if (!created) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  REQUIRE(created);
  CHECK(created->status == 201);
  auto got = client.Get("/sessions/live");
  REQUIRE(got);
  CHECK(got->status == 200);

  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(fs::path(store) / "sessions" / "live.json"));
}
