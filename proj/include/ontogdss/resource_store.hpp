#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ontogdss/ontology.hpp"

namespace ontogdss {

struct Session;

enum class ResourceKind { Model, Method, Scheme, Case };

std::string_view to_string(ResourceKind kind);
std::optional<ResourceKind> parse_resource_kind(std::string_view text);

struct ResourceEntry {
  std::string id;
  ResourceKind kind = ResourceKind::Model;
  ConceptAnnotation annotation;
  nlohmann::json payload;

  bool operator==(const ResourceEntry&) const = default;
};

struct SimilarEntry {
  ResourceEntry entry;
  double similarity = 0.0;
};

inline constexpr int kSchemaVersion = 1;

/// Ids double as file names, so they are restricted to [A-Za-z0-9._-] and may
/// not start with a dot.
bool is_valid_id(std::string_view id);

/// Decision-resource base plus session persistence.
///
/// A default-constructed store lives only in memory. A store opened on a
/// directory mirrors every write to disk:
///
///     <dir>/index.json
///     <dir>/resources/<kind>/<id>.json
///     <dir>/sessions/<id>.json
///
/// and holds an exclusive lock on <dir>/.lock for its lifetime.
class ResourceStore {
 public:
  ResourceStore();
  ~ResourceStore();
  ResourceStore(ResourceStore&&) noexcept;
  ResourceStore& operator=(ResourceStore&&) noexcept;
  ResourceStore(const ResourceStore&) = delete;
  ResourceStore& operator=(const ResourceStore&) = delete;

  /// Opens (creating if needed) a directory-backed store.
  /// Throws StoreLocked when another process holds the lock.
  static ResourceStore open(const std::filesystem::path& dir);

  bool persistent() const { return root_.has_value(); }
  const std::optional<std::filesystem::path>& root() const { return root_; }

  void store_entry(const ResourceEntry& entry);
  const ResourceEntry* find(ResourceKind kind, const std::string& id) const;
  std::vector<ResourceEntry> entries(ResourceKind kind) const;

  /// Entries of `kind` with similarity >= threshold, highest first, ties by
  /// id, at most `limit`.
  std::vector<SimilarEntry> retrieve_similar(const ConceptAnnotation& annotation, ResourceKind kind,
                                             double threshold, std::size_t limit) const;

  /// Returns the serialized document that was written.
  std::string save_session(const Session& session);
  Session load_session(const std::string& id) const;
  std::vector<std::string> session_ids() const;

 private:
  struct Lock;

  void write_index() const;

  std::optional<std::filesystem::path> root_;
  std::unique_ptr<Lock> lock_;
  std::map<std::pair<ResourceKind, std::string>, ResourceEntry> entries_;
  std::map<std::string, std::string> sessions_;  // id -> document text
};

}  // namespace ontogdss
