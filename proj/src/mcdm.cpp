#include "ontogdss/mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ontogdss/error.hpp"

namespace ontogdss {

std::string_view to_string(Direction direction) {
  return direction == Direction::Maximize ? "Maximize" : "Minimize";
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "Maximize") return Direction::Maximize;
  if (text == "Minimize") return Direction::Minimize;
  return std::nullopt;
}

double PreferenceFunction::operator()(double diff) const {
  if (shape == Shape::Usual) return diff > 0.0 ? 1.0 : 0.0;
  if (diff <= q) return 0.0;
  if (diff >= p) return 1.0;
  return (diff - q) / (p - q);
}

void DecisionMatrix::validate() const {
  if (scores.size() != schemes.size()) {
    throw Error(ErrorCode::NonRectangular, "score rows do not match the scheme list",
                {{"schemes", schemes.size()}, {"rows", scores.size()}});
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].size() != criteria.size()) {
      throw Error(ErrorCode::NonRectangular, "row '" + schemes[i] + "' has the wrong number of scores",
                  {{"scheme", schemes[i]}, {"expected", criteria.size()}, {"got", scores[i].size()}});
    }
    for (double v : scores[i]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidMatrix, "row '" + schemes[i] + "' holds a non-finite score");
      }
    }
  }
  std::set<std::string> ids(schemes.begin(), schemes.end());
  if (ids.size() != schemes.size()) throw Error(ErrorCode::DuplicateId, "scheme ids must be unique");
  if (criteria.empty()) throw Error(ErrorCode::InvalidMatrix, "matrix has no criteria");
  for (const auto& c : criteria) {
    bool ok = c.weight > 0.0 && std::isfinite(c.weight) && c.discordance_scale > 0.0;
    if (c.preference.shape == PreferenceFunction::Shape::Linear) {
      ok = ok && c.preference.q >= 0.0 && c.preference.p > c.preference.q;
    }
    if (!ok) {
      throw Error(ErrorCode::InvalidCriterion, "criterion '" + c.name + "' has invalid parameters",
                  {{"criterion", c.name}});
    }
  }
}

DecisionMatrix DecisionMatrix::restricted_to(const std::vector<std::string>& keep) const {
  DecisionMatrix out;
  out.criteria = criteria;
  std::set<std::string> wanted(keep.begin(), keep.end());
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (wanted.count(schemes[i])) {
      out.schemes.push_back(schemes[i]);
      out.scores.push_back(scores[i]);
    }
  }
  return out;
}

double FlowResult::net_of(const std::string& scheme) const {
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (schemes[i] == scheme) return net[i];
  }
  throw Error(ErrorCode::UnknownScheme, "no flow for scheme '" + scheme + "'");
}

bool OutrankingResult::outranks_pair(const std::string& a, const std::string& b) const {
  return std::find(outranks.begin(), outranks.end(), std::make_pair(a, b)) != outranks.end();
}

double GroupRanking::score_of(const std::string& scheme) const {
  for (const auto& [id, s] : scores) {
    if (id == scheme) return s;
  }
  throw Error(ErrorCode::UnknownScheme, "no score for scheme '" + scheme + "'");
}

namespace {

void require_schemes(const DecisionMatrix& matrix) {
  if (matrix.schemes.size() < 2) {
    throw Error(ErrorCode::TooFewSchemes, "at least two schemes are required",
                {{"schemes", matrix.schemes.size()}});
  }
}

// Score oriented so that larger is always better.
double oriented(const DecisionMatrix& m, std::size_t scheme, std::size_t criterion) {
  double v = m.scores[scheme][criterion];
  return m.criteria[criterion].direction == Direction::Minimize ? -v : v;
}

}  // namespace

FlowResult promethee2(const DecisionMatrix& matrix) {
  require_schemes(matrix);
  matrix.validate();

  const std::size_t n = matrix.schemes.size();
  const std::size_t k = matrix.criteria.size();
  double total = 0.0;
  for (const auto& c : matrix.criteria) total += c.weight;

  std::vector<std::vector<double>> pi(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        double w = matrix.criteria[j].weight / total;
        sum += w * matrix.criteria[j].preference(oriented(matrix, a, j) - oriented(matrix, b, j));
      }
      pi[a][b] = sum;
    }
  }

  FlowResult r;
  r.schemes = matrix.schemes;
  r.positive.assign(n, 0.0);
  r.negative.assign(n, 0.0);
  r.net.assign(n, 0.0);
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t a = 0; a < n; ++a) {
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      plus += pi[a][b];
      minus += pi[b][a];
    }
    r.positive[a] = plus * scale;
    r.negative[a] = minus * scale;
    r.net[a] = r.positive[a] - r.negative[a];
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<long long> key(n);
  for (std::size_t i = 0; i < n; ++i) key[i] = std::llround(r.net[i] * 1e10);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (key[x] != key[y]) return key[x] > key[y];
    return r.schemes[x] < r.schemes[y];
  });
  for (std::size_t i : order) r.ranking.push_back(r.schemes[i]);
  return r;
}

OutrankingResult electre1(const DecisionMatrix& matrix, double concordance_threshold,
                          double discordance_threshold) {
  require_schemes(matrix);
  matrix.validate();
  if (!(concordance_threshold > 0.0 && concordance_threshold <= 1.0) || !(discordance_threshold >= 0.0)) {
    throw Error(ErrorCode::InvalidPayload, "ELECTRE thresholds out of range",
                {{"concordance", concordance_threshold}, {"discordance", discordance_threshold}});
  }

  const std::size_t n = matrix.schemes.size();
  const std::size_t k = matrix.criteria.size();
  double total = 0.0;
  for (const auto& c : matrix.criteria) total += c.weight;

  OutrankingResult r;
  r.schemes = matrix.schemes;
  r.concordance.assign(n, std::vector<double>(n, 0.0));
  r.discordance.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<bool>> s(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double agree = 0.0;
      double worst = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        double diff = oriented(matrix, a, j) - oriented(matrix, b, j);
        if (diff >= 0.0) agree += matrix.criteria[j].weight;
        worst = std::max(worst, std::max(0.0, -diff) / matrix.criteria[j].discordance_scale);
      }
      r.concordance[a][b] = agree / total;
      r.discordance[a][b] = worst;
      if (r.concordance[a][b] >= concordance_threshold && r.discordance[a][b] <= discordance_threshold) {
        s[a][b] = true;
        r.outranks.emplace_back(matrix.schemes[a], matrix.schemes[b]);
      }
    }
  }

  // Kernel of the condensation: Tarjan SCCs, then peel components that no
  // remaining component outranks, discarding whatever they outrank.
  std::vector<int> comp(n, -1);
  std::vector<int> low(n, 0);
  std::vector<int> num(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int comps = 0;
  auto strongconnect = [&](auto&& self, std::size_t v) -> void {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!s[v][w]) continue;
      if (num[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], num[w]);
      }
    }
    if (low[v] == num[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
      } while (w != v);
      ++comps;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (num[v] < 0) strongconnect(strongconnect, v);
  }

  const auto c = static_cast<std::size_t>(comps);
  std::vector<std::set<std::size_t>> preds(c);
  std::vector<std::set<std::size_t>> succs(c);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto ca = static_cast<std::size_t>(comp[a]);
      auto cb = static_cast<std::size_t>(comp[b]);
      if (s[a][b] && ca != cb) {
        succs[ca].insert(cb);
        preds[cb].insert(ca);
      }
    }
  }
  enum class State { Open, Kernel, Covered };
  std::vector<State> state(c, State::Open);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t x = 0; x < c; ++x) {
      if (state[x] != State::Open) continue;
      bool free = std::all_of(preds[x].begin(), preds[x].end(),
                              [&](std::size_t p) { return state[p] == State::Covered; });
      if (!free) continue;
      state[x] = State::Kernel;
      for (std::size_t y : succs[x]) state[y] = State::Covered;
      progress = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (state[static_cast<std::size_t>(comp[a])] == State::Kernel) r.kernel.push_back(matrix.schemes[a]);
  }
  std::sort(r.kernel.begin(), r.kernel.end());
  return r;
}

GroupRanking borda_aggregate(const std::vector<RankingBallot>& ballots) {
  if (ballots.empty()) throw Error(ErrorCode::InvalidBallot, "no ballots to aggregate");
  std::set<std::string> reference(ballots.front().ranking.begin(), ballots.front().ranking.end());
  double total_weight = 0.0;
  for (const auto& b : ballots) {
    std::set<std::string> ids(b.ranking.begin(), b.ranking.end());
    if (ids.size() != b.ranking.size()) {
      throw Error(ErrorCode::InvalidBallot, "ballot of '" + b.evaluator + "' repeats a scheme",
                  {{"evaluator", b.evaluator}});
    }
    if (ids != reference) {
      throw Error(ErrorCode::MismatchedSchemeSets,
                  "ballot of '" + b.evaluator + "' ranks a different scheme set",
                  {{"evaluator", b.evaluator}});
    }
    if (!(b.weight >= 0.0) || !std::isfinite(b.weight)) {
      throw Error(ErrorCode::InvalidBallot, "ballot weight must be non-negative",
                  {{"evaluator", b.evaluator}});
    }
    total_weight += b.weight;
  }
  if (!(total_weight > 0.0)) throw Error(ErrorCode::InvalidBallot, "ballot weights sum to zero");

  const auto m = static_cast<double>(reference.size());
  std::map<std::string, double> score;
  for (const auto& id : reference) score[id] = 0.0;
  for (const auto& b : ballots) {
    for (std::size_t pos = 0; pos < b.ranking.size(); ++pos) {
      score[b.ranking[pos]] += b.weight * (m - static_cast<double>(pos + 1));
    }
  }

  GroupRanking g;
  for (const auto& [id, s] : score) g.scores.emplace_back(id, s);
  std::stable_sort(g.scores.begin(), g.scores.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  for (const auto& [id, s] : g.scores) g.ranking.push_back(id);
  return g;
}

RankingBallot flows_to_ballot(const FlowResult& flow, const std::string& evaluator, double weight) {
  return {evaluator, flow.ranking, weight};
}

}  // namespace ontogdss
