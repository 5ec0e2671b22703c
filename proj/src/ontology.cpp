#include "ontogdss/ontology.hpp"

#include <algorithm>

#include "ontogdss/error.hpp"
#include "ontogdss/resource_store.hpp"

namespace ontogdss {

std::string_view to_string(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::ProblemType: return "ProblemType";
    case ConceptKind::DecisionLimitation: return "DecisionLimitation";
    case ConceptKind::DecisionPrinciple: return "DecisionPrinciple";
    case ConceptKind::DecisionTarget: return "DecisionTarget";
    case ConceptKind::ProblemCharacteristic: return "ProblemCharacteristic";
    case ConceptKind::EvaluationCriterion: return "EvaluationCriterion";
    case ConceptKind::Scheme: return "Scheme";
  }
  return "";
}

std::string_view to_string(FactorClass factor) {
  return factor == FactorClass::Basic ? "Basic" : "Additional";
}

std::string_view to_string(ProblemStructure structure) {
  switch (structure) {
    case ProblemStructure::Structured: return "Structured";
    case ProblemStructure::SemiStructured: return "SemiStructured";
    case ProblemStructure::NonStructured: return "NonStructured";
  }
  return "";
}

std::optional<ConceptKind> parse_concept_kind(std::string_view text) {
  for (ConceptKind kind : kAllConceptKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::optional<FactorClass> parse_factor_class(std::string_view text) {
  if (text == "Basic") return FactorClass::Basic;
  if (text == "Additional") return FactorClass::Additional;
  return std::nullopt;
}

std::optional<ProblemStructure> parse_problem_structure(std::string_view text) {
  for (auto s : {ProblemStructure::Structured, ProblemStructure::SemiStructured,
                 ProblemStructure::NonStructured}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

FactorClass factor_class(ConceptKind kind) {
  switch (kind) {
    case ConceptKind::DecisionLimitation:
    case ConceptKind::DecisionPrinciple:
    case ConceptKind::DecisionTarget:
      return FactorClass::Basic;
    default:
      return FactorClass::Additional;
  }
}

void ConceptAnnotation::put(ConceptAssertion assertion) {
  if (assertion.label.empty()) {
    throw Error(ErrorCode::EmptyLabel, "concept assertion label must not be empty");
  }
  Key key{assertion.kind, assertion.label};
  assertions_.insert_or_assign(std::move(key), std::move(assertion));
}

bool ConceptAnnotation::erase(ConceptKind kind, const std::string& label) {
  return assertions_.erase(Key{kind, label}) > 0;
}

const ConceptAssertion* ConceptAnnotation::find(ConceptKind kind, const std::string& label) const {
  auto it = assertions_.find(Key{kind, label});
  return it == assertions_.end() ? nullptr : &it->second;
}

bool ConceptAnnotation::has_kind(ConceptKind kind) const {
  auto it = assertions_.lower_bound(Key{kind, std::string{}});
  return it != assertions_.end() && it->first.first == kind;
}

std::vector<ConceptAssertion> ConceptAnnotation::all() const {
  std::vector<ConceptAssertion> out;
  out.reserve(assertions_.size());
  for (const auto& [key, a] : assertions_) out.push_back(a);
  return out;
}

DecisionProblem annotate(DecisionProblem problem, ConceptAssertion assertion) {
  problem.annotation.put(std::move(assertion));
  return problem;
}

std::vector<ConceptAssertion> query_concepts(const ConceptAnnotation& annotation,
                                             std::optional<ConceptKind> kind,
                                             std::optional<FactorClass> factor) {
  std::vector<ConceptAssertion> out;
  for (const auto& [key, a] : annotation.entries()) {
    if (kind && a.kind != *kind) continue;
    if (factor && factor_class(a.kind) != *factor) continue;
    out.push_back(a);
  }
  return out;
}

namespace {

double pair_weight(ConceptKind kind) {
  return factor_class(kind) == FactorClass::Basic ? 2.0 : 1.0;
}

}  // namespace

double annotation_similarity(const ConceptAnnotation& a, const ConceptAnnotation& b) {
  // Both maps iterate in key order, so a merge walk yields the intersection
  // and union weights in one pass.
  double both = 0.0;
  double either = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      either += pair_weight(ia->first.first);
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      either += pair_weight(ib->first.first);
      ++ib;
    } else {
      double w = pair_weight(ia->first.first);
      both += w;
      either += w;
      ++ia;
      ++ib;
    }
  }
  if (either == 0.0) return 1.0;
  return both / either;
}

ProblemStructure classify_problem(const ConceptAnnotation& annotation, const ResourceStore& store,
                                  double similarity_threshold) {
  for (ConceptKind kind : kAllConceptKinds) {
    if (factor_class(kind) == FactorClass::Basic && !annotation.has_kind(kind)) {
      return ProblemStructure::NonStructured;
    }
  }
  bool criteria_quantitative = true;
  for (const auto& a : query_concepts(annotation, ConceptKind::EvaluationCriterion)) {
    criteria_quantitative = criteria_quantitative && a.quantitative;
  }
  if (!criteria_quantitative) return ProblemStructure::SemiStructured;

  for (ResourceKind kind : {ResourceKind::Model, ResourceKind::Method}) {
    if (!store.retrieve_similar(annotation, kind, similarity_threshold, 1).empty()) {
      return ProblemStructure::Structured;
    }
  }
  return ProblemStructure::SemiStructured;
}

}  // namespace ontogdss
