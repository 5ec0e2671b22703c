#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontogdss {

enum class ElementKind { Opinion, Proposition, Problem };
enum class RelationType { Disagree, Support, Neutral, Supplement, Query };
enum class Label { In, Out, Undec };
enum class Semantics { Grounded, Preferred, Stable };

std::string_view to_string(ElementKind kind);
std::string_view to_string(RelationType type);
std::string_view to_string(Label label);
std::string_view to_string(Semantics semantics);
std::optional<ElementKind> parse_element_kind(std::string_view text);
std::optional<RelationType> parse_relation_type(std::string_view text);
std::optional<Semantics> parse_semantics(std::string_view text);

struct ArgumentElement {
  std::string id;
  std::string author;
  ElementKind kind = ElementKind::Opinion;
  std::string text;
  std::uint64_t seq = 0;
  /// Scheme the element argues for. Rejected opinions veto their scheme.
  std::optional<std::string> scheme;

  bool operator==(const ArgumentElement&) const = default;
};

struct ArgRelation {
  std::string source;
  std::string target;
  RelationType type = RelationType::Neutral;

  bool operator==(const ArgRelation&) const = default;
};

/// Workshop board: elements plus at most one typed relation per ordered pair.
class ArgumentBoard {
 public:
  /// Rebuilds a board with the given sequence numbers, checking every
  /// relation endpoint. Used when loading persisted boards.
  static ArgumentBoard restore(std::vector<ArgumentElement> elements, const std::vector<ArgRelation>& relations,
                               std::uint64_t next_seq);

  /// Assigns the next sequence number. Throws DuplicateId.
  void add_element(ArgumentElement element);
  /// Records or replaces the relation for (source, target).
  /// Throws UnknownElement or SelfRelation.
  void relate(const std::string& source, const std::string& target, RelationType type);
  /// Drops the relation for (source, target); returns whether one existed.
  bool unrelate(const std::string& source, const std::string& target);

  const ArgumentElement* find(const std::string& id) const;
  const std::map<std::string, ArgumentElement>& elements() const { return elements_; }
  /// Relations ordered by (source, target).
  std::vector<ArgRelation> relations() const;
  std::uint64_t next_seq() const { return next_seq_; }

  bool operator==(const ArgumentBoard&) const = default;

 private:
  std::map<std::string, ArgumentElement> elements_;
  std::map<std::pair<std::string, std::string>, RelationType> relations_;
  std::uint64_t next_seq_ = 1;
};

/// Relation types that turn into attacks.
struct AttackMappingPolicy {
  std::set<RelationType> attacking = {RelationType::Disagree, RelationType::Query};

  static AttackMappingPolicy standard() { return {}; }
};

struct ArgumentationFramework {
  std::vector<std::string> arguments;  // sorted, unique
  std::set<std::pair<std::string, std::string>> attacks;

  /// Adjacency list: argument -> arguments it attacks.
  std::map<std::string, std::vector<std::string>> adjacency() const;
  bool operator==(const ArgumentationFramework&) const = default;
};

using Labelling = std::map<std::string, Label>;
using Extension = std::set<std::string>;

inline constexpr std::size_t kDefaultExtensionBound = 20;

ArgumentationFramework to_dung(const ArgumentBoard& board,
                               const AttackMappingPolicy& policy = AttackMappingPolicy::standard());

/// Least fixed point of the In/Out labelling rules; the rest is Undec.
Labelling grounded_labelling(const ArgumentationFramework& af);

/// Grounded yields exactly one extension. Preferred and Stable enumerate all
/// subsets and throw TooLarge above `bound` arguments.
std::vector<Extension> extensions(const ArgumentationFramework& af, Semantics semantics,
                                  std::size_t bound = kDefaultExtensionBound);

struct ConsensusRecord {
  std::vector<std::string> accepted;
  std::vector<std::string> rejected;
  std::vector<std::string> undecided;
  Semantics semantics = Semantics::Grounded;
  std::uint64_t committed_at = 0;

  bool operator==(const ConsensusRecord&) const = default;
};

/// Grounded: the labelling's In/Out/Undec sets. Preferred/Stable: accepted
/// when in every extension, rejected when in none, undecided otherwise; with
/// no extension at all every element is undecided.
ConsensusRecord commit_consensus(const ArgumentBoard& board, Semantics semantics = Semantics::Grounded,
                                 const AttackMappingPolicy& policy = AttackMappingPolicy::standard(),
                                 std::size_t bound = kDefaultExtensionBound);

/// Accepted elements of kind Opinion.
std::vector<std::string> accepted_opinions(const ArgumentBoard& board, const ConsensusRecord& record);

/// Schemes referenced by rejected Opinion elements.
std::set<std::string> vetoed_schemes(const ArgumentBoard& board, const ConsensusRecord& record);

}  // namespace ontogdss
