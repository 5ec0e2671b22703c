// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any line fails. Usage: acceptance <path-to-ontogdss-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "ontogdss/codec.hpp"
#include "ontogdss/engine.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ontogdss;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Tolerances and corpus sizes.
constexpr double kFlowTolerance = 1e-9;
constexpr double kOutrankTolerance = 1e-9;
constexpr double kGroundedBudgetSeconds = 60.0;
constexpr double kPipelineBudgetSeconds = 5.0;
constexpr int kFrameworks = 500;
constexpr int kMaxArguments = 10;
constexpr int kFlowMatrices = 1000;
constexpr int kOutrankInstances = 100;
constexpr int kUnanimousProfiles = 200;
constexpr int kScripts = 50;
constexpr std::uint32_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << (o.detail.empty() ? "" : " | " + o.detail) << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ArgumentationFramework> framework_corpus() {
  std::mt19937 rng(kSeed);
  std::vector<ArgumentationFramework> out;
  for (int i = 0; i < kFrameworks; ++i) out.push_back(gen::framework(rng, kMaxArguments));
  return out;
}

Outcome grounded_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (const auto& af : framework_corpus()) {
    Labelling minimal;
    if (!oracle::minimal_complete(af, minimal) || grounded_labelling(af) != minimal) ++mismatches;
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << kFrameworks << " frameworks, " << mismatches << " mismatches, " << secs << " s";
  return {mismatches == 0 && secs < kGroundedBudgetSeconds, d.str()};
}

Outcome extension_theory() {
  int violations = 0;
  for (const auto& af : framework_corpus()) {
    auto pref = extensions(af, Semantics::Preferred);
    auto stab = extensions(af, Semantics::Stable);
    std::set<Extension> pref_set(pref.begin(), pref.end());
    for (const auto& s : stab) violations += pref_set.count(s) == 0;
    auto in = oracle::in_set(grounded_labelling(af));
    for (const auto& p : pref) violations += !std::includes(p.begin(), p.end(), in.begin(), in.end());
  }
  return {violations == 0, std::to_string(violations) + " violations"};
}

CriterionSpec crit(std::string name, double weight) {
  CriterionSpec c;
  c.name = std::move(name);
  c.weight = weight;
  return c;
}

Outcome promethee() {
  DecisionMatrix m{{"A", "B", "C"}, {crit("x", 0.6), crit("y", 0.4)}, {{5, 1}, {3, 3}, {1, 5}}};
  auto f = promethee2(m);
  bool instance = std::abs(f.net_of("A") - 0.2) <= kFlowTolerance && std::abs(f.net_of("B")) <= kFlowTolerance &&
                  std::abs(f.net_of("C") + 0.2) <= kFlowTolerance &&
                  f.ranking == std::vector<std::string>{"A", "B", "C"};

  std::mt19937 rng(kSeed + 1);
  double worst_sum = 0.0;
  int order_changes = 0;
  for (int i = 0; i < kFlowMatrices; ++i) {
    auto r = gen::matrix(rng, gen::uniform(rng, 2, 8), gen::uniform(rng, 1, 5));
    auto flows = promethee2(r);
    double sum = 0.0;
    for (double v : flows.net) sum += v;
    worst_sum = std::max(worst_sum, std::abs(sum));
    auto scaled = r;
    double k = gen::real(rng, 1e-3, 1e3);
    for (auto& c : scaled.criteria) c.weight *= k;
    order_changes += promethee2(scaled).ranking != flows.ranking;
  }
  std::ostringstream d;
  d << "instance " << (instance ? "ok" : "wrong") << ", max |sum phi| " << worst_sum << " over " << kFlowMatrices
    << ", " << order_changes << " order changes under rescaling";
  return {instance && worst_sum <= kFlowTolerance && order_changes == 0, d.str()};
}

Outcome electre() {
  DecisionMatrix m{{"A", "B"}, {crit("x", 0.5), crit("y", 0.3), crit("z", 0.2)}, {{10, 8, 6}, {8, 9, 7}}};
  for (auto& c : m.criteria) c.discordance_scale = 10.0;
  auto r = electre1(m, 0.5, 0.15);
  // Both discordances are single quotients 1/10 and 2/10, so they are compared
  // with the correctly rounded doubles of those quotients.
  bool instance = r.concordance[0][1] == 0.5 && r.discordance[0][1] == 1.0 / 10.0 && r.outranks_pair("A", "B") &&
                  r.concordance[1][0] == 0.5 && r.discordance[1][0] == 2.0 / 10.0 && !r.outranks_pair("B", "A");

  std::mt19937 rng(kSeed + 2);
  double worst = 0.0;
  int relation_mismatches = 0;
  for (int i = 0; i < kOutrankInstances; ++i) {
    auto x = gen::matrix(rng, 4, 3);
    double cth = gen::real(rng, 0.05, 1.0);
    double dth = gen::real(rng, 0.0, 1.5);
    auto out = electre1(x, cth, dth);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        if (a == b) continue;
        worst = std::max(worst, std::abs(out.concordance[a][b] - oracle::concordance(x, a, b)));
        worst = std::max(worst, std::abs(out.discordance[a][b] - oracle::discordance(x, a, b)));
        relation_mismatches += out.outranks_pair(x.schemes[a], x.schemes[b]) != oracle::outranks(x, a, b, cth, dth);
      }
    }
  }
  std::ostringstream d;
  d << "instance " << (instance ? "exact" : "wrong") << ", max matrix deviation " << worst << " over "
    << kOutrankInstances << " 4x3 instances, " << relation_mismatches << " relation mismatches";
  return {instance && worst <= kOutrankTolerance && relation_mismatches == 0, d.str()};
}

Outcome borda() {
  auto g = borda_aggregate({{"e1", {"A", "B", "C"}, 1.0}, {"e2", {"A", "C", "B"}, 1.0}, {"e3", {"B", "A", "C"}, 1.0}});
  bool instance = g.score_of("A") == 5.0 && g.score_of("B") == 3.0 && g.score_of("C") == 1.0 &&
                  g.ranking == std::vector<std::string>{"A", "B", "C"};
  std::mt19937 rng(kSeed + 3);
  int violations = 0;
  for (int i = 0; i < kUnanimousProfiles; ++i) {
    int m = gen::uniform(rng, 1, 7);
    std::vector<std::string> schemes;
    for (int s = 0; s < m; ++s) schemes.push_back("S" + std::to_string(s));
    std::string top = gen::pick(rng, schemes);
    std::vector<RankingBallot> ballots;
    int voters = gen::uniform(rng, 1, 9);
    for (int v = 0; v < voters; ++v) {
      auto r = schemes;
      std::shuffle(r.begin(), r.end(), rng);
      std::iter_swap(r.begin(), std::find(r.begin(), r.end(), top));
      ballots.push_back({"v" + std::to_string(v), r, gen::real(rng, 0.1, 5.0)});
    }
    violations += borda_aggregate(ballots).ranking.front() != top;
  }
  return {instance && violations == 0, std::string("instance ") + (instance ? "ok" : "wrong") + ", " +
                                           std::to_string(violations) + " unanimity violations"};
}

int shell(const std::string& command) {
  int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome double_selection(const std::string& cli) {
  auto dir = fs::temp_directory_path() / ("ontogdss-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  auto demo = (dir / "demo.json").string();
  auto out1 = (dir / "out1.json").string();
  auto out2 = (dir / "out2.json").string();
  bool ran = shell(cli + " demo -o " + demo) == 0 && shell(cli + " run " + demo + " -o " + out1) == 0 &&
             shell(cli + " run " + demo + " -o " + out2) == 0;
  if (!ran) {
    fs::remove_all(dir);
    return {false, "CLI invocation failed"};
  }
  std::string first = slurp(out1);
  bool deterministic = first == slurp(out2);
  fs::remove_all(dir);

  auto out = json::parse(first);
  const auto& alts = out.at("panel").at("alternatives");
  std::size_t total = 0;
  bool shape = alts.size() == 4;
  for (const auto& alt : alts) {
    shape = shape && alt.at("groups").size() == 5;
    for (const auto& g : alt.at("groups")) {
      shape = shape && g.at("evaluators").size() == 1;
      total += g.at("evaluators").size();
    }
  }
  std::ostringstream d;
  d << alts.size() << " alternatives, " << total << " selections, " << (deterministic ? "deterministic" : "outputs differ");
  return {shape && total == 20 && deterministic, d.str()};
}

Outcome stage_machine() {
  int tested = 0;
  int accepted = 0;
  int rule_mismatches = 0;
  for (Stage from : kAllStages) {
    for (Stage to : kAllStages) {
      ++tested;
      Session s = create_session("s", "t", "");
      for (Stage st : kAllStages) {
        if (static_cast<int>(st) > static_cast<int>(from)) break;
        if (st != Stage::ProblemProduction) advance_stage(s, st);
      }
      bool ok = true;
      try {
        advance_stage(s, to);
      } catch (const Error&) {
        ok = false;
      }
      accepted += ok;
      bool rule = static_cast<int>(to) == static_cast<int>(from) + 1 ||
                  (from == Stage::SchemeVerification && to == Stage::SchemeEstablishment);
      rule_mismatches += ok != rule;
    }
  }
  const int required = 7 + 1;
  std::ostringstream d;
  d << tested << " pairs, " << accepted << " accepted, " << required << " required; " << rule_mismatches
    << " disagreements with the forward-by-one-plus-feedback rule";
  if (accepted != required) d << "; seven stages admit only six forward-by-one edges";
  return {tested == 49 && accepted == required && rule_mismatches == 0, d.str()};
}

Outcome replay_determinism() {
  std::mt19937 rng(kSeed + 4);
  int fold_mismatch = 0;
  int store_mismatch = 0;
  int replay_mismatch = 0;
  ResourceStore store;
  for (int i = 0; i < kScripts; ++i) {
    gen::ScriptBuilder b(rng, "script" + std::to_string(i));
    auto script = b.build(gen::uniform(rng, 10, 80));
    EngineState folded;
    for (const auto& c : script) apply_command(folded, parse_command(c));
    const Session& final_session = folded.sessions.at(b.session);
    auto batch = run_batch(dump_canonical(json{{"schema_version", kSchemaVersion}, {"script", script}}));
    fold_mismatch += batch.exit_status != 0 || batch.output != dump_canonical(batch_output(final_session));
    store.save_session(final_session);
    store_mismatch += !(store.load_session(final_session.id) == final_session);
    replay_mismatch += !(replay(final_session.log) == final_session);
  }
  std::ostringstream d;
  d << kScripts << " scripts: " << fold_mismatch << " batch/fold mismatches, " << store_mismatch
    << " save/load mismatches, " << replay_mismatch << " replay mismatches";
  return {fold_mismatch == 0 && store_mismatch == 0 && replay_mismatch == 0, d.str()};
}

Outcome pipeline() {
  auto t0 = std::chrono::steady_clock::now();
  auto r = run_batch(dump_canonical(demo_document()));
  double secs = seconds_since(t0);
  if (r.exit_status != 0) return {false, r.message};
  auto out = parse_json(r.output);
  auto session = out.at("session").get<Session>();
  bool started = !session.log.empty() && session.log.front().type == "SessionCreated";
  std::size_t solved = 0;
  auto leaves = session.tree->leaves();
  for (const auto& leaf : leaves) solved += session.results.count(leaf);
  std::ostringstream d;
  d << "stage " << to_string(session.stage) << ", " << solved << "/" << leaves.size() << " leaves solved, " << secs
    << " s";
  return {started && session.stage == Stage::GeneralApplication && solved == leaves.size() && secs < kPipelineBudgetSeconds,
          d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <ontogdss-cli>\n";
    return 2;
  }
  std::string cli = argv[1];
  report("grounded labelling equals minimal complete labelling", grounded_equivalence);
  report("stable within preferred, grounded within every preferred", extension_theory);
  report("PROMETHEE II flows", promethee);
  report("ELECTRE I concordance, discordance and outranking", electre);
  report("Borda aggregation", borda);
  report("double selection demo scenario", [&] { return double_selection(cli); });
  report("stage machine", stage_machine);
  report("replay determinism", replay_determinism);
  report("end-to-end demo pipeline", pipeline);
  return failures == 0 ? 0 : 1;
}
