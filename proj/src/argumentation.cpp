#include "ontogdss/argumentation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "ontogdss/error.hpp"

namespace ontogdss {

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Opinion: return "Opinion";
    case ElementKind::Proposition: return "Proposition";
    case ElementKind::Problem: return "Problem";
  }
  return "";
}

std::string_view to_string(RelationType type) {
  switch (type) {
    case RelationType::Disagree: return "Disagree";
    case RelationType::Support: return "Support";
    case RelationType::Neutral: return "Neutral";
    case RelationType::Supplement: return "Supplement";
    case RelationType::Query: return "Query";
  }
  return "";
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::In: return "In";
    case Label::Out: return "Out";
    case Label::Undec: return "Undec";
  }
  return "";
}

std::string_view to_string(Semantics semantics) {
  switch (semantics) {
    case Semantics::Grounded: return "Grounded";
    case Semantics::Preferred: return "Preferred";
    case Semantics::Stable: return "Stable";
  }
  return "";
}

std::optional<ElementKind> parse_element_kind(std::string_view text) {
  for (auto k : {ElementKind::Opinion, ElementKind::Proposition, ElementKind::Problem}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::optional<RelationType> parse_relation_type(std::string_view text) {
  for (auto t : {RelationType::Disagree, RelationType::Support, RelationType::Neutral,
                 RelationType::Supplement, RelationType::Query}) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<Semantics> parse_semantics(std::string_view text) {
  for (auto s : {Semantics::Grounded, Semantics::Preferred, Semantics::Stable}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

ArgumentBoard ArgumentBoard::restore(std::vector<ArgumentElement> elements,
                                     const std::vector<ArgRelation>& relations, std::uint64_t next_seq) {
  ArgumentBoard board;
  std::uint64_t highest = 0;
  for (auto& e : elements) {
    if (board.elements_.count(e.id)) {
      throw Error(ErrorCode::DuplicateId, "element '" + e.id + "' appears twice", {{"id", e.id}});
    }
    highest = std::max(highest, e.seq);
    std::string id = e.id;
    board.elements_.emplace(std::move(id), std::move(e));
  }
  board.next_seq_ = std::max(next_seq, highest + 1);
  for (const auto& r : relations) board.relate(r.source, r.target, r.type);
  return board;
}

void ArgumentBoard::add_element(ArgumentElement element) {
  if (element.id.empty()) throw Error(ErrorCode::InvalidId, "element id must not be empty");
  if (elements_.count(element.id)) {
    throw Error(ErrorCode::DuplicateId, "element '" + element.id + "' already on the board",
                {{"id", element.id}});
  }
  element.seq = next_seq_++;
  std::string id = element.id;
  elements_.emplace(std::move(id), std::move(element));
}

void ArgumentBoard::relate(const std::string& source, const std::string& target, RelationType type) {
  for (const auto& id : {source, target}) {
    if (!elements_.count(id)) {
      throw Error(ErrorCode::UnknownElement, "no element '" + id + "' on the board", {{"id", id}});
    }
  }
  if (source == target) {
    throw Error(ErrorCode::SelfRelation, "element '" + source + "' cannot relate to itself",
                {{"id", source}});
  }
  relations_.insert_or_assign({source, target}, type);
}

bool ArgumentBoard::unrelate(const std::string& source, const std::string& target) {
  return relations_.erase({source, target}) > 0;
}

const ArgumentElement* ArgumentBoard::find(const std::string& id) const {
  auto it = elements_.find(id);
  return it == elements_.end() ? nullptr : &it->second;
}

std::vector<ArgRelation> ArgumentBoard::relations() const {
  std::vector<ArgRelation> out;
  out.reserve(relations_.size());
  for (const auto& [key, type] : relations_) out.push_back({key.first, key.second, type});
  return out;
}

std::map<std::string, std::vector<std::string>> ArgumentationFramework::adjacency() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& a : arguments) out[a];
  for (const auto& [from, to] : attacks) out[from].push_back(to);
  return out;
}

ArgumentationFramework to_dung(const ArgumentBoard& board, const AttackMappingPolicy& policy) {
  ArgumentationFramework af;
  for (const auto& [id, e] : board.elements()) af.arguments.push_back(id);
  for (const auto& r : board.relations()) {
    if (policy.attacking.count(r.type)) af.attacks.insert({r.source, r.target});
  }
  return af;
}

namespace {

// Index form of a framework: attackers[i] lists the arguments attacking i.
struct Indexed {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> attackers;
  std::vector<std::vector<std::size_t>> attacked;
};

Indexed index(const ArgumentationFramework& af) {
  Indexed ix;
  ix.names = af.arguments;
  std::sort(ix.names.begin(), ix.names.end());
  ix.names.erase(std::unique(ix.names.begin(), ix.names.end()), ix.names.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < ix.names.size(); ++i) pos[ix.names[i]] = i;
  ix.attackers.resize(ix.names.size());
  ix.attacked.resize(ix.names.size());
  for (const auto& [from, to] : af.attacks) {
    auto f = pos.find(from);
    auto t = pos.find(to);
    if (f == pos.end() || t == pos.end()) {
      throw Error(ErrorCode::UnknownElement, "attack endpoint is not an argument",
                  {{"from", from}, {"to", to}});
    }
    ix.attackers[t->second].push_back(f->second);
    ix.attacked[f->second].push_back(t->second);
  }
  return ix;
}

}  // namespace

Labelling grounded_labelling(const ArgumentationFramework& af) {
  Indexed ix = index(af);
  const std::size_t n = ix.names.size();
  std::vector<Label> label(n, Label::Undec);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (label[i] != Label::Undec) continue;
      bool all_out = true;
      bool some_in = false;
      for (std::size_t a : ix.attackers[i]) {
        all_out = all_out && label[a] == Label::Out;
        some_in = some_in || label[a] == Label::In;
      }
      if (all_out) {
        label[i] = Label::In;
        changed = true;
      } else if (some_in) {
        label[i] = Label::Out;
        changed = true;
      }
    }
  }
  Labelling out;
  for (std::size_t i = 0; i < n; ++i) out[ix.names[i]] = label[i];
  return out;
}

std::vector<Extension> extensions(const ArgumentationFramework& af, Semantics semantics,
                                  std::size_t bound) {
  if (semantics == Semantics::Grounded) {
    Extension in;
    for (const auto& [id, l] : grounded_labelling(af)) {
      if (l == Label::In) in.insert(id);
    }
    return {in};
  }

  Indexed ix = index(af);
  const std::size_t n = ix.names.size();
  if (n > bound || n > 30) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(n) + " arguments exceed the exhaustive bound of " + std::to_string(bound),
                {{"arguments", n}, {"bound", bound}});
  }

  using Mask = std::uint32_t;
  std::vector<Mask> attackers(n, 0);
  std::vector<Mask> attacks(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a : ix.attackers[i]) attackers[i] |= Mask{1} << a;
    for (std::size_t t : ix.attacked[i]) attacks[i] |= Mask{1} << t;
  }
  const Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);

  auto attacked_by = [&](Mask set) {
    Mask out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (set >> i & 1U) out |= attacks[i];
    }
    return out;
  };
  auto conflict_free = [&](Mask set) { return (attacked_by(set) & set) == 0; };

  std::vector<Mask> found;
  for (std::uint64_t s = 0; s <= all; ++s) {
    Mask set = static_cast<Mask>(s);
    if (!conflict_free(set)) continue;
    Mask hit = attacked_by(set);
    if (semantics == Semantics::Stable) {
      if ((set | hit) == all) found.push_back(set);
      continue;
    }
    bool defended = true;
    for (std::size_t i = 0; i < n && defended; ++i) {
      if (set >> i & 1U) defended = (attackers[i] & ~hit) == 0;
    }
    if (defended) found.push_back(set);
  }

  if (semantics == Semantics::Preferred) {
    // Largest first: an admissible set is maximal iff no kept maximal set
    // contains it.
    std::stable_sort(found.begin(), found.end(),
                     [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
    std::vector<Mask> maximal;
    for (Mask s : found) {
      bool covered = std::any_of(maximal.begin(), maximal.end(),
                                 [&](Mask m) { return (s & m) == s; });
      if (!covered) maximal.push_back(s);
    }
    found = std::move(maximal);
  }

  std::vector<Extension> out;
  for (Mask s : found) {
    Extension e;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1U) e.insert(ix.names[i]);
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConsensusRecord commit_consensus(const ArgumentBoard& board, Semantics semantics,
                                 const AttackMappingPolicy& policy, std::size_t bound) {
  ArgumentationFramework af = to_dung(board, policy);
  ConsensusRecord record;
  record.semantics = semantics;
  record.committed_at = board.next_seq();

  if (semantics == Semantics::Grounded) {
    for (const auto& [id, l] : grounded_labelling(af)) {
      switch (l) {
        case Label::In: record.accepted.push_back(id); break;
        case Label::Out: record.rejected.push_back(id); break;
        case Label::Undec: record.undecided.push_back(id); break;
      }
    }
    return record;
  }

  auto exts = extensions(af, semantics, bound);
  for (const auto& id : af.arguments) {
    if (exts.empty()) {
      record.undecided.push_back(id);
      continue;
    }
    std::size_t hits = std::count_if(exts.begin(), exts.end(),
                                     [&](const Extension& e) { return e.count(id) > 0; });
    if (hits == exts.size()) {
      record.accepted.push_back(id);
    } else if (hits == 0) {
      record.rejected.push_back(id);
    } else {
      record.undecided.push_back(id);
    }
  }
  return record;
}

std::vector<std::string> accepted_opinions(const ArgumentBoard& board, const ConsensusRecord& record) {
  std::vector<std::string> out;
  for (const auto& id : record.accepted) {
    const auto* e = board.find(id);
    if (e != nullptr && e->kind == ElementKind::Opinion) out.push_back(id);
  }
  return out;
}

std::set<std::string> vetoed_schemes(const ArgumentBoard& board, const ConsensusRecord& record) {
  std::set<std::string> out;
  for (const auto& id : record.rejected) {
    const auto* e = board.find(id);
    if (e != nullptr && e->kind == ElementKind::Opinion && e->scheme) out.insert(*e->scheme);
  }
  return out;
}

}  // namespace ontogdss
