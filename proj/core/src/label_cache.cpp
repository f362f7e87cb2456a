#include "arcs/label_cache.hpp"

#include "json.hpp"

#include "arcs/digest.hpp"
#include "arcs/error.hpp"

namespace arcs {

using nlohmann::json;

std::string cache_key(std::string_view template_id, std::string_view model_id,
                      std::string_view segment_text, std::size_t sample_index) {
  std::string material;
  material.append(template_id).append(1, '\x1f');
  material.append(model_id).append(1, '\x1f');
  material.append(segment_text).append(1, '\x1f');
  material.append(std::to_string(sample_index));
  return sha256_hex(material);
}

std::string LabelCache::encode(const LabelCacheEntry& entry) {
  json j = {{"key", entry.key}, {"response", entry.response}};
  j["parsed"] = entry.parsed ? json(*entry.parsed) : json(nullptr);
  try {
    return j.dump();
  } catch (const json::exception& e) {
    throw CacheError(std::string("cannot encode cache entry: ") + e.what());
  }
}

LabelCacheEntry LabelCache::decode(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw CacheError(std::string("corrupt cache line: ") + e.what());
  }
  if (!j.is_object() || !j.contains("key") || !j["key"].is_string() || !j.contains("response") ||
      !j["response"].is_string() || !j.contains("parsed") ||
      !(j["parsed"].is_string() || j["parsed"].is_null())) {
    throw CacheError("corrupt cache line: missing or mistyped field");
  }
  LabelCacheEntry e;
  e.key = j["key"].get<std::string>();
  e.response = j["response"].get<std::string>();
  if (j["parsed"].is_string()) e.parsed = j["parsed"].get<std::string>();
  if (e.key.size() != 64 || e.key.find_first_not_of("0123456789abcdef") != std::string::npos) {
    throw CacheError("corrupt cache line: key is not a hex digest");
  }
  return e;
}

LabelCache::LabelCache(std::filesystem::path store) : path_(std::move(store)) {
  if (std::filesystem::exists(*path_)) {
    std::ifstream in(*path_, std::ios::binary);
    if (!in) throw CacheError("cannot read cache " + path_->string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      LabelCacheEntry e;
      try {
        e = decode(line);
      } catch (const CacheError& err) {
        throw CacheError(path_->string() + ":" + std::to_string(lineno) + ": " + err.what());
      }
      auto [it, inserted] = entries_.emplace(e.key, e);
      if (!inserted && !(it->second == e)) ++conflicts_;
    }
    if (in.bad()) throw CacheError("cannot read cache " + path_->string());
  } else if (path_->has_parent_path()) {
    std::filesystem::create_directories(path_->parent_path());
  }
  out_.open(*path_, std::ios::binary | std::ios::app);
  if (!out_) throw CacheError("cannot open cache " + path_->string() + " for append");
}

std::optional<LabelCacheEntry> LabelCache::get(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

PutOutcome LabelCache::put(const LabelCacheEntry& entry) {
  const std::string line = encode(entry);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(entry.key, entry);
  if (!inserted) {
    if (it->second == entry) return PutOutcome::Duplicate;
    ++conflicts_;
    return PutOutcome::Conflict;
  }
  if (out_.is_open()) {
    out_ << line << '\n';
    out_.flush();
    if (!out_) {
      entries_.erase(it);
      throw CacheError("cannot append to cache " + path_->string());
    }
  }
  return PutOutcome::Inserted;
}

std::size_t LabelCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::size_t LabelCache::conflicts() const {
  std::shared_lock lock(mutex_);
  return conflicts_;
}

}  // namespace arcs
