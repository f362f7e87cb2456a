#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/agreement.hpp"
#include "arcs/corpus.hpp"
#include "arcs/labels.hpp"
#include "arcs/stats.hpp"
#include "arcs/trajectory.hpp"

namespace arcs {

/// Throws InputError naming the path when it is missing or unreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Exclusive `<path>.lock` marker held for the object's lifetime.
class FileLock {
 public:
  /// Throws InputError when the lock is already held.
  explicit FileLock(std::filesystem::path target);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

  const std::filesystem::path& path() const { return lock_; }

 private:
  std::filesystem::path lock_;
};

/// One segment label in a label store.
struct StoredLabel {
  std::string testimony_id;
  std::size_t seq_index = 0;
  ValenceLabel label;

  bool operator==(const StoredLabel&) const = default;
};

/// Reading functions throw ParseError with the 1-based line number.
std::string transcripts_to_jsonl(std::span<const Transcript> transcripts);
std::vector<Transcript> transcripts_from_jsonl(std::string_view text);

std::string segments_to_jsonl(std::span<const Segment> segments);
std::vector<Segment> segments_from_jsonl(std::string_view text);

std::string labels_to_jsonl(std::span<const StoredLabel> labels);
std::vector<StoredLabel> labels_from_jsonl(std::string_view text);

std::string trajectories_to_jsonl(std::span<const Trajectory> trajectories);
std::vector<Trajectory> trajectories_from_jsonl(std::string_view text);

std::string index_to_jsonl(std::span<const IndexEntry> entries);
std::vector<IndexEntry> index_from_jsonl(std::string_view text);

std::string references_to_jsonl(std::span<const ReferenceTrajectory> references);
std::vector<ReferenceTrajectory> references_from_jsonl(std::string_view text);

std::string annotations_to_jsonl(std::span<const AnnotationRecord> records);
std::vector<AnnotationRecord> annotations_from_jsonl(std::string_view text);

/// Adds "gold" (null when discarded) and "status" ("gold" or "discarded").
std::string adjudications_to_jsonl(std::span<const AdjudicatedItem> items);
std::vector<AdjudicatedItem> adjudications_from_jsonl(std::string_view text);

std::string period_tags_to_jsonl(std::span<const PeriodTag> tags);
std::vector<PeriodTag> period_tags_from_jsonl(std::string_view text);

}  // namespace arcs
