#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontogdss {

enum class Direction { Maximize, Minimize };

std::string_view to_string(Direction direction);
std::optional<Direction> parse_direction(std::string_view text);

/// PROMETHEE preference function. Usual is a step at zero; Linear ramps from
/// 0 at `q` to 1 at `p`.
struct PreferenceFunction {
  enum class Shape { Usual, Linear };

  Shape shape = Shape::Usual;
  double q = 0.0;
  double p = 0.0;

  static PreferenceFunction usual() { return {}; }
  static PreferenceFunction linear(double q, double p) { return {Shape::Linear, q, p}; }

  double operator()(double diff) const;
  bool operator==(const PreferenceFunction&) const = default;
};

struct CriterionSpec {
  std::string name;
  Direction direction = Direction::Maximize;
  double weight = 1.0;
  PreferenceFunction preference;
  /// ELECTRE discordance scale.
  double discordance_scale = 1.0;

  bool operator==(const CriterionSpec&) const = default;
};

struct DecisionMatrix {
  std::vector<std::string> schemes;
  std::vector<CriterionSpec> criteria;
  std::vector<std::vector<double>> scores;  // scores[scheme][criterion]

  /// Throws NonRectangular, InvalidMatrix or InvalidCriterion.
  void validate() const;
  /// Copy restricted to the listed schemes, keeping matrix order.
  DecisionMatrix restricted_to(const std::vector<std::string>& keep) const;

  bool operator==(const DecisionMatrix&) const = default;
};

struct FlowResult {
  std::vector<std::string> schemes;
  std::vector<double> positive;
  std::vector<double> negative;
  std::vector<double> net;
  std::vector<std::string> ranking;

  double net_of(const std::string& scheme) const;
};

struct OutrankingResult {
  std::vector<std::string> schemes;
  std::vector<std::vector<double>> concordance;  // diagonal left at 0
  std::vector<std::vector<double>> discordance;  // diagonal left at 0
  std::vector<std::pair<std::string, std::string>> outranks;
  std::vector<std::string> kernel;

  bool outranks_pair(const std::string& a, const std::string& b) const;
};

struct RankingBallot {
  std::string evaluator;
  std::vector<std::string> ranking;
  double weight = 1.0;

  bool operator==(const RankingBallot&) const = default;
};

struct GroupRanking {
  std::vector<std::string> ranking;
  std::vector<std::pair<std::string, double>> scores;  // in ranking order

  double score_of(const std::string& scheme) const;
  bool operator==(const GroupRanking&) const = default;
};

/// PROMETHEE II net flows. Weights are normalized to sum 1 and Minimize
/// criteria are negated before differencing. Ranking is by net flow
/// descending; flows equal at 1e-10 resolution are ties broken by id.
/// Throws TooFewSchemes, NonRectangular, InvalidMatrix, InvalidCriterion.
FlowResult promethee2(const DecisionMatrix& matrix);

/// ELECTRE I. a S b iff c(a,b) >= concordance_threshold and
/// d(a,b) <= discordance_threshold.
OutrankingResult electre1(const DecisionMatrix& matrix, double concordance_threshold,
                          double discordance_threshold);

/// Borda count: each ballot awards weight * (m - position) with positions
/// counted from 1. Throws MismatchedSchemeSets or InvalidBallot.
GroupRanking borda_aggregate(const std::vector<RankingBallot>& ballots);

RankingBallot flows_to_ballot(const FlowResult& flow, const std::string& evaluator, double weight = 1.0);

/// Reads the standalone CSV layout: optional `#key,v1,v2,...` rows
/// (weight, direction, preference, discordance_scale), then a header row
/// `scheme,<criterion names...>`, then one row per scheme. Missing keys take
/// CriterionSpec defaults. Throws ParseFailure, then the validate() errors.
DecisionMatrix matrix_from_csv(std::string_view text);
/// Writes the layout matrix_from_csv reads, with every key row present.
std::string matrix_to_csv(const DecisionMatrix& matrix);

}  // namespace ontogdss
