#include "ontogdss/resource_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ontogdss/codec.hpp"
#include "ontogdss/error.hpp"
#include "ontogdss/session.hpp"

namespace fs = std::filesystem;

namespace ontogdss {

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Model: return "Model";
    case ResourceKind::Method: return "Method";
    case ResourceKind::Scheme: return "Scheme";
    case ResourceKind::Case: return "Case";
  }
  return "";
}

std::optional<ResourceKind> parse_resource_kind(std::string_view text) {
  for (auto k : {ResourceKind::Model, ResourceKind::Method, ResourceKind::Scheme, ResourceKind::Case}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

bool is_valid_id(std::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  });
}

struct ResourceStore::Lock {
  int fd = -1;

  explicit Lock(const fs::path& file) {
    fd = ::open(file.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) throw Error(ErrorCode::IoFailure, "cannot open lock file " + file.string());
    if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
      ::close(fd);
      throw Error(ErrorCode::StoreLocked, "store is locked by another process: " + file.string(),
                  {{"lock", file.string()}});
    }
  }
  ~Lock() {
    if (fd >= 0) {
      ::flock(fd, LOCK_UN);
      ::close(fd);
    }
  }
  Lock(const Lock&) = delete;
  Lock& operator=(const Lock&) = delete;
};

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Write to a sibling temp file and rename so readers never see a torn file.
void write_file(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot replace " + path.string() + ": " + ec.message());
}

void require_id(const std::string& id) {
  if (!is_valid_id(id)) throw Error(ErrorCode::InvalidId, "invalid id '" + id + "'", {{"id", id}});
}

}  // namespace

ResourceStore::ResourceStore() = default;
ResourceStore::~ResourceStore() = default;
ResourceStore::ResourceStore(ResourceStore&&) noexcept = default;
ResourceStore& ResourceStore::operator=(ResourceStore&&) noexcept = default;

ResourceStore ResourceStore::open(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / "sessions", ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create store at " + dir.string() + ": " + ec.message());
  fs::create_directories(dir / "resources", ec);

  ResourceStore store;
  store.lock_ = std::make_unique<Lock>(dir / ".lock");
  store.root_ = dir;

  // Resource files are the source of truth; index.json is a derived listing.
  for (ResourceKind kind : {ResourceKind::Model, ResourceKind::Method, ResourceKind::Scheme, ResourceKind::Case}) {
    fs::path sub = dir / "resources" / std::string(to_string(kind));
    if (!fs::is_directory(sub)) continue;
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(sub)) {
      if (f.path().extension() == ".json") files.push_back(f.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      auto entry = decode<ResourceEntry>(parse_json(read_file(file)), file.string());
      if (entry.kind != kind || entry.id != file.stem().string()) {
        throw Error(ErrorCode::InvalidPayload, "resource file does not match its location: " + file.string());
      }
      store.entries_[{entry.kind, entry.id}] = std::move(entry);
    }
  }
  return store;
}

void ResourceStore::write_index() const {
  if (!root_) return;
  json resources = json::array();
  for (const auto& [key, entry] : entries_) {
    resources.push_back(json{{"kind", to_string(key.first)}, {"id", key.second}});
  }
  json sessions = session_ids();
  write_file(*root_ / "index.json",
             dump_canonical(json{{"schema_version", kSchemaVersion}, {"resources", resources}, {"sessions", sessions}}));
}

void ResourceStore::store_entry(const ResourceEntry& entry) {
  require_id(entry.id);
  auto key = std::make_pair(entry.kind, entry.id);
  if (entries_.count(key)) {
    throw Error(ErrorCode::DuplicateId,
                std::string(to_string(entry.kind)) + " '" + entry.id + "' already stored",
                {{"kind", to_string(entry.kind)}, {"id", entry.id}});
  }
  if (root_) {
    json j = entry;
    write_file(*root_ / "resources" / std::string(to_string(entry.kind)) / (entry.id + ".json"), dump_canonical(j));
  }
  entries_.emplace(key, entry);
  write_index();
}

const ResourceEntry* ResourceStore::find(ResourceKind kind, const std::string& id) const {
  auto it = entries_.find({kind, id});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<ResourceEntry> ResourceStore::entries(ResourceKind kind) const {
  std::vector<ResourceEntry> out;
  for (const auto& [key, e] : entries_) {
    if (key.first == kind) out.push_back(e);
  }
  return out;
}

std::vector<SimilarEntry> ResourceStore::retrieve_similar(const ConceptAnnotation& annotation, ResourceKind kind,
                                                          double threshold, std::size_t limit) const {
  std::vector<SimilarEntry> out;
  for (const auto& [key, e] : entries_) {
    if (key.first != kind) continue;
    double s = annotation_similarity(annotation, e.annotation);
    if (s >= threshold) out.push_back({e, s});
  }
  // entries_ is id-ordered within a kind, so a stable sort keeps ties by id.
  std::stable_sort(out.begin(), out.end(),
                   [](const SimilarEntry& a, const SimilarEntry& b) { return a.similarity > b.similarity; });
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::string ResourceStore::save_session(const Session& session) {
  require_id(session.id);
  std::string text = dump_canonical(session_document(session));
  if (root_) write_file(*root_ / "sessions" / (session.id + ".json"), text);
  bool fresh = sessions_.count(session.id) == 0;
  sessions_[session.id] = text;
  if (fresh) write_index();
  return text;
}

Session ResourceStore::load_session(const std::string& id) const {
  std::string text;
  if (root_) {
    if (!is_valid_id(id)) throw Error(ErrorCode::NotFound, "no session '" + id + "'", {{"id", id}});
    fs::path file = *root_ / "sessions" / (id + ".json");
    if (!fs::exists(file)) throw Error(ErrorCode::NotFound, "no session '" + id + "'", {{"id", id}});
    text = read_file(file);
  } else {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session '" + id + "'", {{"id", id}});
    text = it->second;
  }
  return session_from_document(parse_json(text));
}

std::vector<std::string> ResourceStore::session_ids() const {
  std::vector<std::string> out;
  if (root_) {
    std::error_code ec;
    for (const auto& f : fs::directory_iterator(*root_ / "sessions", ec)) {
      if (f.path().extension() == ".json") out.push_back(f.path().stem().string());
    }
  } else {
    for (const auto& [id, text] : sessions_) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ontogdss
