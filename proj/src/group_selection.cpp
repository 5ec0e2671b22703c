#include "ontogdss/group_selection.hpp"

#include <algorithm>
#include <set>

#include "ontogdss/error.hpp"

namespace ontogdss {

bool SelectionCriterion::matches(const DecisionMaker& dm) const {
  auto it = dm.attributes.find(attribute);
  if (it == dm.attributes.end()) return false;
  const Scalar& value = it->second;
  if (std::find(admissible.begin(), admissible.end(), value) != admissible.end()) return true;
  if ((min || max) && std::holds_alternative<double>(value)) {
    double x = std::get<double>(value);
    return (!min || x >= *min) && (!max || x <= *max);
  }
  return false;
}

std::vector<std::string> EvaluatorPanel::evaluators() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& alt : alternatives) {
    for (const auto& g : alt.groups) {
      for (const auto& id : g.evaluators) {
        if (seen.insert(id).second) out.push_back(id);
      }
    }
  }
  return out;
}

std::size_t EvaluatorPanel::selection_count() const {
  std::size_t n = 0;
  for (const auto& alt : alternatives) {
    for (const auto& g : alt.groups) n += g.evaluators.size();
  }
  return n;
}

namespace {

void check_stage(const SelectionStage& stage) {
  double total = 0.0;
  for (const auto& c : stage.criteria) {
    if (!(c.weight >= 0.0)) {
      throw Error(ErrorCode::InvalidStage, "criterion '" + c.attribute + "' has a negative weight");
    }
    total += c.weight;
  }
  if (!(total > 0.0)) {
    throw Error(ErrorCode::InvalidStage, "selection stage weights must sum to a positive value");
  }
  if (!(stage.threshold >= 0.0 && stage.threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidStage, "selection threshold must lie in [0, 1]");
  }
}

double score_unchecked(const DecisionMaker& dm, const SelectionStage& stage) {
  double matched = 0.0;
  double total = 0.0;
  for (const auto& c : stage.criteria) {
    total += c.weight;
    if (c.matches(dm)) matched += c.weight;
  }
  return matched / total;
}

bool better(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

const DecisionMaker* member(const GroupPool& pool, const std::string& group, const std::string& id) {
  for (const auto& g : pool.groups) {
    if (g.id != group) continue;
    for (const auto& m : g.members) {
      if (m.id == id) return &m;
    }
  }
  return nullptr;
}

void check_pool(const GroupPool& pool) {
  if (pool.groups.empty()) throw Error(ErrorCode::EmptyPool, "group pool has no groups");
  std::set<std::string> group_ids;
  std::set<std::string> member_ids;
  for (const auto& g : pool.groups) {
    if (!group_ids.insert(g.id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate group id '" + g.id + "'", {{"id", g.id}});
    }
    for (const auto& m : g.members) {
      if (!member_ids.insert(m.id).second) {
        throw Error(ErrorCode::DuplicateId, "decision maker '" + m.id + "' appears twice in the pool",
                    {{"id", m.id}});
      }
    }
  }
}

}  // namespace

double stage_score(const DecisionMaker& dm, const SelectionStage& stage) {
  check_stage(stage);
  return score_unchecked(dm, stage);
}

std::vector<GroupCandidates> first_selection(const GroupPool& pool, const SelectionStage& stage1) {
  check_pool(pool);
  check_stage(stage1);
  std::vector<GroupCandidates> out;
  for (const auto& g : pool.groups) {
    GroupCandidates gc{g.id, {}};
    for (const auto& m : g.members) {
      double s = score_unchecked(m, stage1);
      if (s >= stage1.threshold) gc.candidates.push_back({m.id, s});
    }
    std::sort(gc.candidates.begin(), gc.candidates.end(), better);
    out.push_back(std::move(gc));
  }
  return out;
}

std::vector<GroupSelection> second_selection(const std::vector<GroupCandidates>& candidates,
                                             const GroupPool& pool, const SelectionStage& stage2,
                                             int k) {
  if (k < 1) throw Error(ErrorCode::InvalidPayload, "k must be at least 1");
  check_stage(stage2);
  std::vector<GroupSelection> out;
  for (const auto& gc : candidates) {
    if (gc.candidates.size() < static_cast<std::size_t>(k)) {
      throw Error(ErrorCode::InsufficientCandidates,
                  "group '" + gc.group + "' has " + std::to_string(gc.candidates.size()) +
                      " candidates, need " + std::to_string(k),
                  {{"group", gc.group}, {"available", gc.candidates.size()}, {"k", k}});
    }
    std::vector<ScoredCandidate> rescored;
    for (const auto& c : gc.candidates) {
      const DecisionMaker* dm = member(pool, gc.group, c.id);
      if (dm == nullptr) {
        throw Error(ErrorCode::InvalidPayload,
                    "candidate '" + c.id + "' is not a member of group '" + gc.group + "'");
      }
      rescored.push_back({c.id, score_unchecked(*dm, stage2)});
    }
    std::sort(rescored.begin(), rescored.end(), better);
    GroupSelection sel{gc.group, {}};
    for (int i = 0; i < k; ++i) sel.evaluators.push_back(rescored[static_cast<std::size_t>(i)].id);
    out.push_back(std::move(sel));
  }
  return out;
}

EvaluatorPanel double_select(const GroupPool& pool, const std::vector<std::string>& alternatives,
                             const SelectionStage& stage1, const SelectionStage& stage2, int k) {
  std::set<std::string> seen;
  for (const auto& alt : alternatives) {
    if (!seen.insert(alt).second) {
      throw Error(ErrorCode::DuplicateId, "alternative '" + alt + "' listed twice", {{"id", alt}});
    }
  }
  auto candidates = first_selection(pool, stage1);
  EvaluatorPanel panel;
  for (const auto& alt : alternatives) {
    auto own = candidates;
    for (auto& gc : own) {
      std::erase_if(gc.candidates, [&](const ScoredCandidate& c) { return c.id == alt; });
    }
    panel.alternatives.push_back({alt, second_selection(own, pool, stage2, k)});
  }
  return panel;
}

}  // namespace ontogdss
