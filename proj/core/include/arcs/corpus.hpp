#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace arcs {

enum class Speaker { Interviewer, Subject };

struct Turn {
  Speaker speaker = Speaker::Subject;
  std::string text;

  bool operator==(const Turn&) const = default;
};

/// One interview. Turns alternate freely between interviewer and subject.
struct Transcript {
  std::string id;
  std::vector<Turn> turns;
  std::map<std::string, std::string> metadata;

  bool operator==(const Transcript&) const = default;
};

/// Contiguous span of a transcript's word stream (interviewer and subject words
/// in turn order). `end_word` is exclusive.
struct Segment {
  std::string testimony_id;
  std::size_t seq_index = 0;
  std::size_t start_word = 0;
  std::size_t end_word = 0;
  std::size_t n_words = 0;
  std::string text;
  double position = 0.0;

  bool operator==(const Segment&) const = default;
};

enum class TranscriptFormat {
  /// Lines prefixed "Q:" (interviewer) or "A:" (subject). Blank lines are
  /// skipped and "# key: value" lines set metadata ("# id: ..." sets the id).
  TurnMarkedText,
  /// {"id": ..., "metadata": {...}, "turns": [{"speaker": ..., "text": ...}]}
  Structured,
};

/// Throws ParseError (with line number for turn-marked text) on malformed input.
/// `fallback_id` is used when the input does not carry an id itself.
Transcript parse_transcript(std::string_view raw, TranscriptFormat format,
                            std::string_view fallback_id = {});

/// Structured JSON form; parse_transcript(emit_transcript(t), Structured) == t.
std::string emit_transcript(const Transcript& transcript);
std::string emit_turn_marked(const Transcript& transcript);

/// Throws ParseError if the transcript breaks its invariants.
void validate(const Transcript& transcript);

std::vector<std::string> split_words(std::string_view text);
std::string normalize_whitespace(std::string_view text);
/// All turn texts joined by single spaces.
std::string transcript_text(const Transcript& transcript);
std::size_t word_count(const Transcript& transcript);

struct SegmentationOptions {
  std::size_t min_words = 10;
  std::size_t max_words = 100;
};

struct SegmentationResult {
  std::vector<Segment> segments;
  /// Set when the whole transcript is shorter than min_words.
  bool undersized = false;
  std::vector<std::string> warnings;
};

/// Question-answer pairs, merged forward below min_words (the last one merges
/// backward) and split at sentence boundaries above max_words. Positions are
/// assigned before returning.
SegmentationResult segment(const Transcript& transcript, SegmentationOptions options = {});

/// position = (start_word + n_words / 2) / total_words.
std::vector<Segment> assign_positions(std::vector<Segment> segments);

}  // namespace arcs
