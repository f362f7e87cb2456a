#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace arcs {

struct LabelCacheEntry {
  std::string key;
  std::string response;
  /// Parsed classification token, or nullopt when the response failed to parse.
  std::optional<std::string> parsed;

  bool operator==(const LabelCacheEntry&) const = default;
};

/// Hex SHA-256 over the four fields joined by U+001F.
std::string cache_key(std::string_view template_id, std::string_view model_id,
                      std::string_view segment_text, std::size_t sample_index);

enum class PutOutcome { Inserted, Duplicate, Conflict };

/// Append-only JSON Lines store. The first entry written for a key wins; a later
/// put with a different payload is reported as Conflict and not stored.
/// Readers run concurrently; writes are serialized.
class LabelCache {
 public:
  /// In-memory cache with no backing file.
  LabelCache() = default;
  /// Loads `store` if it exists (CacheError on any malformed line) and appends to it.
  explicit LabelCache(std::filesystem::path store);

  LabelCache(const LabelCache&) = delete;
  LabelCache& operator=(const LabelCache&) = delete;

  std::optional<LabelCacheEntry> get(const std::string& key) const;
  PutOutcome put(const LabelCacheEntry& entry);

  std::size_t size() const;
  std::size_t conflicts() const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

  static std::string encode(const LabelCacheEntry& entry);
  /// Throws CacheError on malformed input.
  static LabelCacheEntry decode(std::string_view line);

 private:
  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, LabelCacheEntry> entries_;
  std::size_t conflicts_ = 0;
  std::ofstream out_;
};

}  // namespace arcs
