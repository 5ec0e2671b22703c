#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontogdss/ontology.hpp"

namespace ontogdss {

struct TaskNode {
  std::string id;
  std::string label;
  ConceptAnnotation annotation;
  std::vector<std::string> children;
  /// Set once a scheme has been recorded for the node.
  std::optional<std::string> solved_scheme;

  bool solved() const { return solved_scheme.has_value(); }
  bool operator==(const TaskNode&) const = default;
};

struct TaskTree {
  std::string root;
  std::map<std::string, TaskNode> nodes;

  const TaskNode* find(const std::string& id) const;
  TaskNode* find(const std::string& id);
  bool is_leaf(const std::string& id) const;
  /// Leaf ids in depth-first, child order.
  std::vector<std::string> leaves() const;

  bool operator==(const TaskTree&) const = default;
};

/// Recursive user-supplied decomposition outline.
struct TaskOutline {
  std::string id;
  std::string label;
  ConceptAnnotation annotation;
  std::vector<TaskOutline> children;
};

using DecisionPath = std::vector<std::string>;

enum class ViolationKind { MissingRoot, MultiRoot, MultiParent, DanglingChild, Cycle, Orphan };

std::string_view to_string(ViolationKind kind);

struct TreeViolation {
  ViolationKind kind;
  std::string node;
  std::string detail;
};

/// Builds a tree mirroring `outline`. The root carries the problem's
/// annotation merged over the outline root's own assertions.
/// Throws EmptyOutline (root without id) or DuplicateId.
TaskTree decompose(const DecisionProblem& problem, const TaskOutline& outline);

/// Every violated structural invariant; empty means the tree is well formed.
std::vector<TreeViolation> validate_tree(const TaskTree& tree);

/// One root-to-leaf path per leaf, depth-first in child order.
/// Throws InvalidTree.
std::vector<DecisionPath> decision_paths(const TaskTree& tree);

/// Path with the largest sum of node scores; the first one in depth-first
/// order wins ties. Throws MissingScore or InvalidTree.
DecisionPath select_path(const TaskTree& tree, const std::map<std::string, double>& node_scores);

}  // namespace ontogdss
