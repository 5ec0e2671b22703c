#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ontogdss {

class ResourceStore;

/// A scalar-or-text payload, used for concept values and evaluator attributes.
using Scalar = std::variant<double, std::string>;

/// The seven concepts a decision subject is described by.
enum class ConceptKind {
  ProblemType,
  DecisionLimitation,
  DecisionPrinciple,
  DecisionTarget,
  ProblemCharacteristic,
  EvaluationCriterion,
  Scheme,
};

inline constexpr std::array<ConceptKind, 7> kAllConceptKinds = {
    ConceptKind::ProblemType,           ConceptKind::DecisionLimitation,
    ConceptKind::DecisionPrinciple,     ConceptKind::DecisionTarget,
    ConceptKind::ProblemCharacteristic, ConceptKind::EvaluationCriterion,
    ConceptKind::Scheme,
};

enum class FactorClass { Basic, Additional };

enum class ProblemStructure { Structured, SemiStructured, NonStructured };

std::string_view to_string(ConceptKind kind);
std::string_view to_string(FactorClass factor);
std::string_view to_string(ProblemStructure structure);
std::optional<ConceptKind> parse_concept_kind(std::string_view text);
std::optional<FactorClass> parse_factor_class(std::string_view text);
std::optional<ProblemStructure> parse_problem_structure(std::string_view text);

/// Limitations, principles and targets are Basic; everything else is Additional.
FactorClass factor_class(ConceptKind kind);

struct ConceptAssertion {
  ConceptKind kind = ConceptKind::ProblemType;
  std::string label;
  std::optional<Scalar> value;
  bool quantitative = false;

  bool operator==(const ConceptAssertion&) const = default;
};

/// Set of assertions keyed by (kind, label). Iteration order is (kind, label).
class ConceptAnnotation {
 public:
  using Key = std::pair<ConceptKind, std::string>;

  ConceptAnnotation() = default;

  /// Inserts or replaces the assertion with the same (kind, label).
  /// Throws Error(EmptyLabel) for an empty label.
  void put(ConceptAssertion assertion);
  bool erase(ConceptKind kind, const std::string& label);

  const ConceptAssertion* find(ConceptKind kind, const std::string& label) const;
  bool has_kind(ConceptKind kind) const;

  std::size_t size() const { return assertions_.size(); }
  bool empty() const { return assertions_.empty(); }

  /// All assertions in (kind, label) order.
  std::vector<ConceptAssertion> all() const;

  const std::map<Key, ConceptAssertion>& entries() const { return assertions_; }

  bool operator==(const ConceptAnnotation&) const = default;

 private:
  std::map<Key, ConceptAssertion> assertions_;
};

struct DecisionProblem {
  std::string id;
  std::string title;
  std::string description;
  ConceptAnnotation annotation;
  ProblemStructure structure = ProblemStructure::NonStructured;

  bool operator==(const DecisionProblem&) const = default;
};

/// Returns a copy of `problem` with `assertion` added. A repeated
/// (kind, label) replaces the earlier payload.
DecisionProblem annotate(DecisionProblem problem, ConceptAssertion assertion);

/// Assertions matching every supplied filter, sorted by (kind, label).
std::vector<ConceptAssertion> query_concepts(const ConceptAnnotation& annotation,
                                             std::optional<ConceptKind> kind = std::nullopt,
                                             std::optional<FactorClass> factor = std::nullopt);

/// Weighted Jaccard similarity over (kind, label) pairs. Basic-factor pairs
/// weigh 2, Additional pairs weigh 1. Two empty annotations are identical (1.0).
double annotation_similarity(const ConceptAnnotation& a, const ConceptAnnotation& b);

inline constexpr double kDefaultStructuredSimilarity = 0.5;

/// Structured: every Basic kind asserted, every criterion quantitative and a
/// stored Model or Method at or above `similarity_threshold`.
/// SemiStructured: every Basic kind asserted but the Structured test fails.
/// NonStructured: otherwise.
ProblemStructure classify_problem(const ConceptAnnotation& annotation, const ResourceStore& store,
                                  double similarity_threshold = kDefaultStructuredSimilarity);

}  // namespace ontogdss
