#include "ontogdss/task_tree.hpp"

#include <functional>
#include <set>

#include "ontogdss/error.hpp"

namespace ontogdss {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MissingRoot: return "MissingRoot";
    case ViolationKind::MultiRoot: return "MultiRoot";
    case ViolationKind::MultiParent: return "MultiParent";
    case ViolationKind::DanglingChild: return "DanglingChild";
    case ViolationKind::Cycle: return "Cycle";
    case ViolationKind::Orphan: return "Orphan";
  }
  return "";
}

const TaskNode* TaskTree::find(const std::string& id) const {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

TaskNode* TaskTree::find(const std::string& id) {
  auto it = nodes.find(id);
  return it == nodes.end() ? nullptr : &it->second;
}

bool TaskTree::is_leaf(const std::string& id) const {
  const TaskNode* node = find(id);
  return node != nullptr && node->children.empty();
}

std::vector<std::string> TaskTree::leaves() const {
  std::vector<std::string> out;
  for (const auto& path : decision_paths(*this)) out.push_back(path.back());
  return out;
}

TaskTree decompose(const DecisionProblem& problem, const TaskOutline& outline) {
  if (outline.id.empty()) {
    throw Error(ErrorCode::EmptyOutline, "decomposition outline has no root node");
  }
  TaskTree tree;
  tree.root = outline.id;

  std::function<void(const TaskOutline&)> add = [&](const TaskOutline& item) {
    if (item.id.empty()) {
      throw Error(ErrorCode::EmptyOutline, "outline node without id");
    }
    TaskNode node;
    node.id = item.id;
    node.label = item.label.empty() ? item.id : item.label;
    node.annotation = item.annotation;
    for (const auto& child : item.children) node.children.push_back(child.id);
    if (!tree.nodes.emplace(item.id, std::move(node)).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate task node id '" + item.id + "'",
                  {{"id", item.id}});
    }
    for (const auto& child : item.children) add(child);
  };
  add(outline);

  auto& root = tree.nodes.at(tree.root);
  for (const auto& [key, a] : problem.annotation.entries()) root.annotation.put(a);
  return tree;
}

std::vector<TreeViolation> validate_tree(const TaskTree& tree) {
  std::vector<TreeViolation> out;
  if (tree.nodes.find(tree.root) == tree.nodes.end()) {
    out.push_back({ViolationKind::MissingRoot, tree.root, "root id not among nodes"});
  }

  std::map<std::string, int> parents;
  for (const auto& [id, node] : tree.nodes) {
    for (const auto& child : node.children) {
      if (tree.nodes.find(child) == tree.nodes.end()) {
        out.push_back({ViolationKind::DanglingChild, id, child});
      } else {
        ++parents[child];
      }
    }
  }
  for (const auto& [id, node] : tree.nodes) {
    int count = parents.count(id) ? parents.at(id) : 0;
    if (count > 1) out.push_back({ViolationKind::MultiParent, id, std::to_string(count) + " parents"});
    if (id != tree.root && count == 0) out.push_back({ViolationKind::MultiRoot, id, "no parent"});
    if (id == tree.root && count > 0) out.push_back({ViolationKind::MissingRoot, id, "declared root has a parent"});
  }

  // Colour DFS over the whole graph; a grey target marks a back edge.
  enum class Colour { White, Grey, Black };
  std::map<std::string, Colour> colour;
  std::set<std::string> on_cycle;
  std::function<void(const std::string&)> visit = [&](const std::string& id) {
    colour[id] = Colour::Grey;
    for (const auto& child : tree.nodes.at(id).children) {
      if (tree.nodes.find(child) == tree.nodes.end()) continue;
      Colour c = colour.count(child) ? colour[child] : Colour::White;
      if (c == Colour::Grey) {
        on_cycle.insert(child);
      } else if (c == Colour::White) {
        visit(child);
      }
    }
    colour[id] = Colour::Black;
  };
  if (tree.nodes.count(tree.root)) visit(tree.root);
  std::set<std::string> reachable;
  for (const auto& [id, c] : colour) reachable.insert(id);
  for (const auto& [id, node] : tree.nodes) {
    if (!colour.count(id)) visit(id);
  }
  for (const auto& id : on_cycle) {
    out.push_back({ViolationKind::Cycle, id, "back edge"});
  }

  for (const auto& [id, node] : tree.nodes) {
    if (!reachable.count(id) && parents.count(id)) {
      out.push_back({ViolationKind::Orphan, id, "unreachable from root"});
    }
  }
  return out;
}

namespace {

void require_valid(const TaskTree& tree) {
  auto violations = validate_tree(tree);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(ErrorCode::InvalidTree,
                "invalid task tree: " + std::string(to_string(v.kind)) + " at '" + v.node + "'",
                {{"violation", to_string(v.kind)}, {"node", v.node}});
  }
}

}  // namespace

std::vector<DecisionPath> decision_paths(const TaskTree& tree) {
  require_valid(tree);
  std::vector<DecisionPath> out;
  DecisionPath current;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    current.push_back(id);
    const auto& node = tree.nodes.at(id);
    if (node.children.empty()) {
      out.push_back(current);
    } else {
      for (const auto& child : node.children) walk(child);
    }
    current.pop_back();
  };
  walk(tree.root);
  return out;
}

DecisionPath select_path(const TaskTree& tree, const std::map<std::string, double>& node_scores) {
  require_valid(tree);
  for (const auto& [id, node] : tree.nodes) {
    if (!node_scores.count(id)) {
      throw Error(ErrorCode::MissingScore, "no score for task node '" + id + "'", {{"node", id}});
    }
  }
  DecisionPath best;
  double best_sum = 0.0;
  for (auto& path : decision_paths(tree)) {
    double sum = 0.0;
    for (const auto& id : path) sum += node_scores.at(id);
    if (best.empty() || sum > best_sum) {
      best_sum = sum;
      best = std::move(path);
    }
  }
  return best;
}

}  // namespace ontogdss
