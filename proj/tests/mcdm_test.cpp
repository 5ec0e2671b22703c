#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ontogdss/error.hpp"
#include "ontogdss/mcdm.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace ontogdss;

namespace {

CriterionSpec crit(std::string name, double weight = 1.0, Direction dir = Direction::Maximize) {
  CriterionSpec c;
  c.name = std::move(name);
  c.weight = weight;
  c.direction = dir;
  return c;
}

DecisionMatrix make(std::vector<std::string> schemes, std::vector<CriterionSpec> criteria,
                    std::vector<std::vector<double>> scores) {
  return DecisionMatrix{std::move(schemes), std::move(criteria), std::move(scores)};
}

RankingBallot ballot(std::string who, std::vector<std::string> ranking, double weight = 1.0) {
  return RankingBallot{std::move(who), std::move(ranking), weight};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidPayload;
}

std::vector<std::size_t> order_of(const FlowResult& f) {
  std::vector<std::size_t> out;
  for (const auto& id : f.ranking) {
    out.push_back(static_cast<std::size_t>(std::find(f.schemes.begin(), f.schemes.end(), id) - f.schemes.begin()));
  }
  return out;
}

// Brute-force kernels of the condensation: sets of components that are
// independent and absorb every other component.
std::vector<std::vector<std::string>> kernels_oracle(const DecisionMatrix& m, const OutrankingResult& r) {
  const std::size_t n = m.schemes.size();
  std::vector<std::vector<bool>> s(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : r.outranks) {
    auto ia = std::find(m.schemes.begin(), m.schemes.end(), a) - m.schemes.begin();
    auto ib = std::find(m.schemes.begin(), m.schemes.end(), b) - m.schemes.begin();
    s[static_cast<std::size_t>(ia)][static_cast<std::size_t>(ib)] = true;
  }
  auto reach = s;
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (reach[i][j] && reach[j][i]) {
        rep[i] = rep[j];
        break;
      }
    }
  }
  std::vector<std::size_t> comps;
  for (std::size_t i = 0; i < n; ++i)
    if (rep[i] == i) comps.push_back(i);
  auto edge = [&](std::size_t x, std::size_t y) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (rep[a] == x && rep[b] == y && s[a][b]) return true;
    return false;
  };
  std::vector<std::vector<std::string>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << comps.size()); ++mask) {
    auto in = [&](std::size_t ci) { return (mask >> ci) & 1u; };
    bool ok = true;
    for (std::size_t x = 0; x < comps.size() && ok; ++x) {
      for (std::size_t y = 0; y < comps.size() && ok; ++y) {
        if (x != y && in(x) && in(y) && edge(comps[x], comps[y])) ok = false;
      }
      if (!in(x)) {
        bool absorbed = false;
        for (std::size_t y = 0; y < comps.size(); ++y)
          if (y != x && in(y) && edge(comps[y], comps[x])) absorbed = true;
        if (!absorbed) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<std::string> k;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t ci = 0; ci < comps.size(); ++ci)
        if (in(ci) && rep[i] == comps[ci]) k.push_back(m.schemes[i]);
    }
    std::sort(k.begin(), k.end());
    out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("preference functions") {
  auto u = PreferenceFunction::usual();
  CHECK(u(0.0) == 0.0);
  CHECK(u(-1.0) == 0.0);
  CHECK(u(1e-12) == 1.0);
  auto l = PreferenceFunction::linear(1.0, 3.0);
  CHECK(l(1.0) == 0.0);
  CHECK(l(2.0) == doctest::Approx(0.5));
  CHECK(l(3.0) == 1.0);
  CHECK(l(10.0) == 1.0);
  CHECK(l(-5.0) == 0.0);
}

TEST_CASE("promethee examples") {
  auto same = promethee2(make({"B", "A"}, {crit("c")}, {{3}, {3}}));
  CHECK(same.net == std::vector<double>{0.0, 0.0});
  CHECK(same.ranking == std::vector<std::string>{"A", "B"});

  auto cross = promethee2(make({"A", "B"}, {crit("x"), crit("y")}, {{1, 0}, {0, 1}}));
  CHECK(cross.net_of("A") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cross.net_of("B") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cross.positive[0] == doctest::Approx(0.5));

  auto three = promethee2(make({"A", "B", "C"}, {crit("x", 0.6), crit("y", 0.4)}, {{5, 1}, {3, 3}, {1, 5}}));
  CHECK(std::abs(three.net_of("A") - 0.2) < 1e-9);
  CHECK(std::abs(three.net_of("B") - 0.0) < 1e-9);
  CHECK(std::abs(three.net_of("C") + 0.2) < 1e-9);
  CHECK(three.ranking == std::vector<std::string>{"A", "B", "C"});

  // A Minimize criterion flips the order.
  auto costs = promethee2(make({"A", "B"}, {crit("cost", 1.0, Direction::Minimize)}, {{5}, {3}}));
  CHECK(costs.ranking == std::vector<std::string>{"B", "A"});

  CHECK(code_of([] { promethee2(make({"A"}, {crit("c")}, {{1}})); }) == ErrorCode::TooFewSchemes);
  CHECK(code_of([] { promethee2(make({"A", "B"}, {crit("c")}, {{1}, {1, 2}})); }) == ErrorCode::NonRectangular);
  CHECK(code_of([] { promethee2(make({"A", "B"}, {crit("c")}, {{1}})); }) == ErrorCode::NonRectangular);
}

TEST_CASE("promethee matches the oracle on random matrices") {
  std::mt19937 rng(41);
  for (int round = 0; round < 500; ++round) {
    auto m = gen::matrix(rng, gen::uniform(rng, 2, 7), gen::uniform(rng, 1, 5));
    auto f = promethee2(m);
    auto o = oracle::promethee(m);
    double sum = 0.0;
    for (std::size_t i = 0; i < m.schemes.size(); ++i) {
      CHECK(std::abs(f.positive[i] - o.plus[i]) < 1e-9);
      CHECK(std::abs(f.negative[i] - o.minus[i]) < 1e-9);
      CHECK(std::abs(f.net[i] - o.net[i]) < 1e-9);
      sum += f.net[i];
    }
    CHECK(std::abs(sum) < 1e-9);

    // Ranking is a permutation sorted by net flow.
    auto ord = order_of(f);
    CHECK(std::is_permutation(f.ranking.begin(), f.ranking.end(), m.schemes.begin(), m.schemes.end()));
    for (std::size_t i = 1; i < ord.size(); ++i) CHECK(f.net[ord[i - 1]] >= f.net[ord[i]] - 1e-10);

    auto scaled = m;
    double k = gen::real(rng, 0.01, 100.0);
    for (auto& c : scaled.criteria) c.weight *= k;
    CHECK(promethee2(scaled).ranking == f.ranking);
  }
}

TEST_CASE("adding a constant to a column leaves Usual flows unchanged") {
  std::mt19937 rng(42);
  for (int round = 0; round < 200; ++round) {
    auto m = gen::matrix(rng, gen::uniform(rng, 2, 6), gen::uniform(rng, 1, 4));
    for (auto& c : m.criteria) c.preference = PreferenceFunction::usual();
    for (auto& row : m.scores)
      for (auto& v : row) v = std::round(v);
    auto shifted = m;
    std::size_t col = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(m.criteria.size()) - 1));
    double delta = gen::uniform(rng, -20, 20);
    for (auto& row : shifted.scores) row[col] += delta;
    auto a = promethee2(m);
    auto b = promethee2(shifted);
    CHECK(a.ranking == b.ranking);
    for (std::size_t i = 0; i < a.net.size(); ++i) CHECK(std::abs(a.net[i] - b.net[i]) < 1e-12);
  }
}

TEST_CASE("dominance orders flows and blocks reverse outranking") {
  std::mt19937 rng(43);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    auto m = gen::matrix(rng, gen::uniform(rng, 2, 5), gen::uniform(rng, 1, 4));
    // Make row 0 weakly dominate row 1, strictly on one criterion.
    std::size_t strict = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(m.criteria.size()) - 1));
    for (std::size_t c = 0; c < m.criteria.size(); ++c) {
      double better = m.criteria[c].direction == Direction::Maximize ? 1.0 : -1.0;
      double gap = c == strict ? gen::real(rng, 0.5, 3.0) : (gen::chance(rng, 0.5) ? 0.0 : gen::real(rng, 0.0, 3.0));
      m.scores[0][c] = m.scores[1][c] + better * gap;
    }
    auto f = promethee2(m);
    CHECK(f.net[0] >= f.net[1] - 1e-12);

    // With a zero discordance threshold the dominated row cannot outrank.
    double cth = gen::real(rng, 0.01, 1.0);
    auto r = electre1(m, cth, 0.0);
    CHECK_FALSE(r.outranks_pair(m.schemes[1], m.schemes[0]));
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("electre examples") {
  auto same = electre1(make({"A", "B", "C"}, {crit("x"), crit("y")}, {{1, 2}, {1, 2}, {1, 2}}), 1.0, 0.0);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      if (a == b) continue;
      CHECK(same.concordance[a][b] == 1.0);
      CHECK(same.discordance[a][b] == 0.0);
    }
  }
  CHECK(same.outranks.size() == 6);
  CHECK(same.kernel == std::vector<std::string>{"A", "B", "C"});

  auto m = make({"A", "B"}, {crit("x", 0.5), crit("y", 0.3), crit("z", 0.2)}, {{10, 8, 6}, {8, 9, 7}});
  for (auto& c : m.criteria) c.discordance_scale = 10.0;
  auto r = electre1(m, 0.5, 0.15);
  CHECK(r.concordance[0][1] == 0.5);
  CHECK(r.discordance[0][1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(r.outranks_pair("A", "B"));
  CHECK(r.concordance[1][0] == 0.5);
  CHECK(r.discordance[1][0] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_FALSE(r.outranks_pair("B", "A"));
  CHECK(r.kernel == std::vector<std::string>{"A"});

  CHECK(code_of([&] { electre1(m, 0.0, 0.1); }) == ErrorCode::InvalidPayload);
  CHECK(code_of([&] { electre1(m, 0.5, -0.1); }) == ErrorCode::InvalidPayload);
  CHECK(code_of([] { electre1(make({"A"}, {crit("c")}, {{1}}), 0.5, 0.1); }) == ErrorCode::TooFewSchemes);
}

TEST_CASE("electre matches the oracle on random matrices") {
  std::mt19937 rng(44);
  for (int round = 0; round < 300; ++round) {
    int n = round < 100 ? 4 : gen::uniform(rng, 2, 6);
    int k = round < 100 ? 3 : gen::uniform(rng, 1, 4);
    auto m = gen::matrix(rng, n, k);
    double cth = gen::real(rng, 0.05, 1.0);
    double dth = gen::real(rng, 0.0, 1.5);
    auto r = electre1(m, cth, dth);
    for (std::size_t a = 0; a < m.schemes.size(); ++a) {
      for (std::size_t b = 0; b < m.schemes.size(); ++b) {
        if (a == b) continue;
        CHECK(std::abs(r.concordance[a][b] - oracle::concordance(m, a, b)) < 1e-9);
        CHECK(std::abs(r.discordance[a][b] - oracle::discordance(m, a, b)) < 1e-9);
        CHECK(r.concordance[a][b] >= 0.0);
        CHECK(r.concordance[a][b] <= 1.0);
        CHECK(r.discordance[a][b] >= 0.0);
        CHECK(r.outranks_pair(m.schemes[a], m.schemes[b]) == oracle::outranks(m, a, b, cth, dth));
      }
    }

    // S shrinks as the concordance threshold rises or the discordance one falls.
    auto tighter = electre1(m, std::min(1.0, cth + gen::real(rng, 0.0, 0.5)), dth * gen::real(rng, 0.0, 1.0));
    for (const auto& [a, b] : tighter.outranks) CHECK(r.outranks_pair(a, b));

    auto kernels = kernels_oracle(m, r);
    REQUIRE(kernels.size() == 1);
    CHECK(r.kernel == kernels[0]);
  }
}

TEST_CASE("borda examples") {
  auto g = borda_aggregate({ballot("e1", {"A", "B", "C"}), ballot("e2", {"A", "C", "B"}), ballot("e3", {"B", "A", "C"})});
  CHECK(g.ranking == std::vector<std::string>{"A", "B", "C"});
  CHECK(g.score_of("A") == 5.0);
  CHECK(g.score_of("B") == 3.0);
  CHECK(g.score_of("C") == 1.0);

  auto single = borda_aggregate({ballot("e", {"C", "A", "B"})});
  CHECK(single.ranking == std::vector<std::string>{"C", "A", "B"});

  auto same = borda_aggregate({ballot("x", {"B", "A", "C"}), ballot("y", {"B", "A", "C"}), ballot("z", {"B", "A", "C"})});
  CHECK(same.ranking == std::vector<std::string>{"B", "A", "C"});
  CHECK(same.scores == std::vector<std::pair<std::string, double>>{{"B", 6.0}, {"A", 3.0}, {"C", 0.0}});

  auto tie = borda_aggregate({ballot("x", {"B", "A"}), ballot("y", {"A", "B"})});
  CHECK(tie.ranking == std::vector<std::string>{"A", "B"});

  auto weighted = borda_aggregate({ballot("x", {"B", "A"}, 2.0), ballot("y", {"A", "B"}, 1.0)});
  CHECK(weighted.ranking == std::vector<std::string>{"B", "A"});

  CHECK(code_of([] { borda_aggregate({ballot("x", {"A", "B"}), ballot("y", {"A", "C"})}); }) ==
        ErrorCode::MismatchedSchemeSets);
  CHECK(code_of([] { borda_aggregate({ballot("x", {"A", "B"}), ballot("y", {"A"})}); }) ==
        ErrorCode::MismatchedSchemeSets);
  CHECK(code_of([] { borda_aggregate({}); }) == ErrorCode::InvalidBallot);
  CHECK(code_of([] { borda_aggregate({ballot("x", {"A", "A"})}); }) == ErrorCode::InvalidBallot);
  CHECK(code_of([] { borda_aggregate({ballot("x", {"A", "B"}, 0.0)}); }) == ErrorCode::InvalidBallot);
  CHECK(code_of([] { borda_aggregate({ballot("x", {"A", "B"}, -1.0)}); }) == ErrorCode::InvalidBallot);
}

TEST_CASE("borda scores match a hand sum and unanimity holds") {
  std::mt19937 rng(45);
  for (int round = 0; round < 300; ++round) {
    int m = gen::uniform(rng, 1, 6);
    std::vector<std::string> schemes;
    for (int i = 0; i < m; ++i) schemes.push_back("S" + std::to_string(i));
    std::string top = gen::pick(rng, schemes);
    bool unanimous = round % 2 == 0;
    std::vector<RankingBallot> ballots;
    int voters = gen::uniform(rng, 1, 7);
    for (int v = 0; v < voters; ++v) {
      auto r = schemes;
      std::shuffle(r.begin(), r.end(), rng);
      if (unanimous) std::iter_swap(r.begin(), std::find(r.begin(), r.end(), top));
      ballots.push_back(ballot("v" + std::to_string(v), r, gen::real(rng, 0.1, 3.0)));
    }
    auto g = borda_aggregate(ballots);
    std::map<std::string, double> expected;
    for (const auto& b : ballots) {
      for (std::size_t pos = 0; pos < b.ranking.size(); ++pos) {
        expected[b.ranking[pos]] += b.weight * static_cast<double>(m - static_cast<int>(pos + 1));
      }
    }
    for (const auto& s : schemes) CHECK(std::abs(g.score_of(s) - expected[s]) < 1e-9);
    for (std::size_t i = 1; i < g.scores.size(); ++i) CHECK(g.scores[i - 1].second >= g.scores[i].second);
    if (unanimous) CHECK(g.ranking.front() == top);
  }
}

TEST_CASE("flows to ballot") {
  auto f = promethee2(make({"A", "B"}, {crit("x")}, {{2}, {1}}));
  auto b = flows_to_ballot(f, "e1", 2.5);
  CHECK(b.ranking == std::vector<std::string>{"A", "B"});
  CHECK(b.evaluator == "e1");
  CHECK(b.weight == 2.5);

  auto tie = flows_to_ballot(promethee2(make({"Z", "Y", "X"}, {crit("x")}, {{1}, {1}, {1}})), "e");
  CHECK(tie.ranking == std::vector<std::string>{"X", "Y", "Z"});

  std::mt19937 rng(46);
  auto five = flows_to_ballot(promethee2(gen::matrix(rng, 5, 3)), "e");
  std::vector<std::string> all = {"S0", "S1", "S2", "S3", "S4"};
  CHECK(std::is_permutation(five.ranking.begin(), five.ranking.end(), all.begin(), all.end()));
}

TEST_CASE("validate") {
  auto ok = make({"A", "B"}, {crit("x")}, {{1}, {2}});
  CHECK_NOTHROW(ok.validate());

  auto dup = make({"A", "A"}, {crit("x")}, {{1}, {2}});
  CHECK(code_of([&] { dup.validate(); }) == ErrorCode::DuplicateId);
  auto nocrit = make({"A", "B"}, {}, {{}, {}});
  CHECK(code_of([&] { nocrit.validate(); }) == ErrorCode::InvalidMatrix);
  auto nan = make({"A", "B"}, {crit("x")}, {{1}, {std::nan("")}});
  CHECK(code_of([&] { nan.validate(); }) == ErrorCode::InvalidMatrix);
  auto zero = make({"A", "B"}, {crit("x", 0.0)}, {{1}, {2}});
  CHECK(code_of([&] { zero.validate(); }) == ErrorCode::InvalidCriterion);
  auto badlin = ok;
  badlin.criteria[0].preference = PreferenceFunction::linear(2.0, 1.0);
  CHECK(code_of([&] { badlin.validate(); }) == ErrorCode::InvalidCriterion);
  auto baddelta = ok;
  baddelta.criteria[0].discordance_scale = 0.0;
  CHECK(code_of([&] { baddelta.validate(); }) == ErrorCode::InvalidCriterion);

  auto three = make({"A", "B", "C"}, {crit("x")}, {{1}, {2}, {3}});
  auto sub = three.restricted_to({"C", "A"});
  CHECK(sub.schemes == std::vector<std::string>{"A", "C"});
  CHECK(sub.scores == std::vector<std::vector<double>>{{1}, {3}});
}

TEST_CASE("csv layout") {
  const char* text =
      "#weight,0.6,0.4\n"
      "#direction,Maximize,Minimize\n"
      "#preference,Usual,Linear:1:3\n"
      "scheme,quality,cost\n"
      "A,5,1\n"
      "\"B, revised\",3,3\n";
  auto m = matrix_from_csv(text);
  CHECK(m.schemes == std::vector<std::string>{"A", "B, revised"});
  CHECK(m.criteria[0].weight == 0.6);
  CHECK(m.criteria[1].direction == Direction::Minimize);
  CHECK(m.criteria[1].preference == PreferenceFunction::linear(1, 3));
  CHECK(m.criteria[0].discordance_scale == 1.0);
  CHECK(m.scores == std::vector<std::vector<double>>{{5, 1}, {3, 3}});
  CHECK(matrix_from_csv(matrix_to_csv(m)) == m);

  auto plain = matrix_from_csv("scheme,x\r\nA,1\r\nB,2\r\n");
  CHECK(plain.criteria[0] == crit("x"));

  CHECK(code_of([] { matrix_from_csv(""); }) == ErrorCode::ParseFailure);
  CHECK(code_of([] { matrix_from_csv("scheme,x\nA,one\n"); }) == ErrorCode::ParseFailure);
  CHECK(code_of([] { matrix_from_csv("scheme,x\nA,1,2\n"); }) == ErrorCode::NonRectangular);
  CHECK(code_of([] { matrix_from_csv("#weight,1,2\nscheme,x\nA,1\n"); }) == ErrorCode::NonRectangular);
  CHECK(code_of([] { matrix_from_csv("#colour,red\nscheme,x\nA,1\n"); }) == ErrorCode::ParseFailure);
  CHECK(code_of([] { matrix_from_csv("#direction,Up\nscheme,x\nA,1\n"); }) == ErrorCode::ParseFailure);
  CHECK(code_of([] { matrix_from_csv("scheme,x\n\"A,1\n"); }) == ErrorCode::ParseFailure);
  CHECK(code_of([] { matrix_from_csv("#weight,-1\nscheme,x\nA,1\n"); }) == ErrorCode::InvalidCriterion);
}

TEST_CASE("csv round trips random matrices exactly") {
  std::mt19937 rng(47);
  for (int round = 0; round < 200; ++round) {
    auto m = gen::matrix(rng, gen::uniform(rng, 1, 5), gen::uniform(rng, 1, 4));
    CHECK(matrix_from_csv(matrix_to_csv(m)) == m);
  }
}
