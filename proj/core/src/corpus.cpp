#include "arcs/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "arcs/error.hpp"
#include "json.hpp"

namespace arcs {
namespace {

using nlohmann::json;

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if ((c >> 5) == 0x6) {
      len = 2;
    } else if ((c >> 4) == 0xE) {
      len = 3;
    } else if ((c >> 3) == 0x1E) {
      len = 4;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    if (len == 2 && c < 0xC2) return false;
    i += len;
  }
  return true;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// A word closes a sentence when it ends in . ? or ! (ignoring closing quotes/brackets).
bool ends_sentence(std::string_view word) {
  while (!word.empty()) {
    const char c = word.back();
    if (c == '"' || c == '\'' || c == ')' || c == ']') {
      word.remove_suffix(1);
      continue;
    }
    // UTF-8 right quotes U+201D / U+2019
    if (word.size() >= 3 && static_cast<unsigned char>(word[word.size() - 3]) == 0xE2 &&
        static_cast<unsigned char>(word[word.size() - 2]) == 0x80 &&
        (static_cast<unsigned char>(c) == 0x9D || static_cast<unsigned char>(c) == 0x99)) {
      word.remove_suffix(3);
      continue;
    }
    break;
  }
  if (word.empty()) return false;
  const char c = word.back();
  return c == '.' || c == '?' || c == '!';
}

Transcript parse_turn_marked(std::string_view raw, std::string_view fallback_id) {
  Transcript t;
  t.id = std::string(fallback_id);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    const std::size_t nl = raw.find('\n', pos);
    std::string_view line =
        raw.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? raw.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const std::string_view meta = trim(body.substr(1));
      const std::size_t colon = meta.find(':');
      if (colon == std::string_view::npos) throw ParseError("metadata line without ':'", line_no);
      const std::string key(trim(meta.substr(0, colon)));
      const std::string value(trim(meta.substr(colon + 1)));
      if (key.empty()) throw ParseError("metadata line with empty key", line_no);
      if (key == "id") {
        t.id = value;
      } else {
        t.metadata[key] = value;
      }
      continue;
    }
    Speaker speaker;
    if (line.rfind("Q:", 0) == 0) {
      speaker = Speaker::Interviewer;
    } else if (line.rfind("A:", 0) == 0) {
      speaker = Speaker::Subject;
    } else {
      throw ParseError("expected 'Q:' or 'A:' prefix", line_no);
    }
    std::string text = normalize_whitespace(line.substr(2));
    if (text.empty()) throw ParseError("empty turn", line_no);
    t.turns.push_back({speaker, std::move(text)});
  }
  return t;
}

Transcript parse_structured(std::string_view raw, std::string_view fallback_id) {
  json doc;
  try {
    doc = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid transcript JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("transcript JSON must be an object");
  Transcript t;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) throw ParseError("transcript 'id' must be a string");
    t.id = doc["id"].get<std::string>();
  } else {
    t.id = std::string(fallback_id);
  }
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) throw ParseError("transcript 'metadata' must be an object");
    for (const auto& [key, value] : meta.items()) {
      t.metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  if (!doc.contains("turns") || !doc["turns"].is_array()) {
    throw ParseError("transcript 'turns' must be an array");
  }
  std::size_t index = 0;
  for (const json& turn : doc["turns"]) {
    const std::string where = "turn " + std::to_string(index++);
    if (!turn.is_object() || !turn.contains("speaker") || !turn.contains("text") ||
        !turn["speaker"].is_string() || !turn["text"].is_string()) {
      throw ParseError(where + ": expected {\"speaker\": str, \"text\": str}");
    }
    const std::string speaker = turn["speaker"].get<std::string>();
    Turn out;
    if (speaker == "interviewer") {
      out.speaker = Speaker::Interviewer;
    } else if (speaker == "subject") {
      out.speaker = Speaker::Subject;
    } else {
      throw ParseError(where + ": unknown speaker '" + speaker + "'");
    }
    out.text = normalize_whitespace(turn["text"].get<std::string>());
    t.turns.push_back(std::move(out));
  }
  return t;
}

struct WordRange {
  std::size_t begin;
  std::size_t end;
  std::size_t size() const { return end - begin; }
};

// Sentence units inside [range); sentences longer than max_words are cut into
// ceil(len / max_words) near-equal chunks.
std::vector<std::size_t> sentence_atoms(const std::vector<bool>& boundary_after, WordRange range,
                                        std::size_t max_words) {
  std::vector<std::size_t> atoms;
  std::size_t start = range.begin;
  auto flush = [&](std::size_t end) {
    const std::size_t len = end - start;
    if (len == 0) return;
    if (len <= max_words) {
      atoms.push_back(len);
    } else {
      const std::size_t parts = (len + max_words - 1) / max_words;
      for (std::size_t p = 0; p < parts; ++p) {
        atoms.push_back(len / parts + (p < len % parts ? 1 : 0));
      }
    }
    start = end;
  };
  for (std::size_t w = range.begin; w < range.end; ++w) {
    if (boundary_after[w]) flush(w + 1);
  }
  flush(range.end);
  return atoms;
}

std::size_t greedy_parts(const std::vector<std::size_t>& atoms, std::size_t cap) {
  std::size_t parts = 0;
  std::size_t current = 0;
  for (std::size_t a : atoms) {
    if (current > 0 && current + a > cap) {
      ++parts;
      current = 0;
    }
    current += a;
  }
  return parts + (current > 0 ? 1 : 0);
}

// Fewest parts of size <= max_words, then the smallest achievable largest part.
std::vector<WordRange> split_range(const std::vector<bool>& boundary_after, WordRange range,
                                   std::size_t max_words) {
  const std::vector<std::size_t> atoms = sentence_atoms(boundary_after, range, max_words);
  const std::size_t k = greedy_parts(atoms, max_words);
  std::size_t lo = std::max(*std::max_element(atoms.begin(), atoms.end()),
                            (range.size() + k - 1) / k);
  std::size_t hi = max_words;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (greedy_parts(atoms, mid) <= k) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  std::vector<WordRange> out;
  std::size_t begin = range.begin;
  std::size_t current = 0;
  for (std::size_t a : atoms) {
    if (current > 0 && current + a > lo) {
      out.push_back({begin, begin + current});
      begin += current;
      current = 0;
    }
    current += a;
  }
  out.push_back({begin, begin + current});
  return out;
}

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  for (const std::string& w : split_words(text)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string transcript_text(const Transcript& transcript) {
  std::string out;
  for (const Turn& turn : transcript.turns) {
    if (!out.empty()) out += ' ';
    out += turn.text;
  }
  return normalize_whitespace(out);
}

std::size_t word_count(const Transcript& transcript) {
  std::size_t n = 0;
  for (const Turn& turn : transcript.turns) n += split_words(turn.text).size();
  return n;
}

void validate(const Transcript& transcript) {
  if (transcript.id.empty()) throw ParseError("transcript id is empty");
  if (transcript.turns.empty()) throw ParseError("empty transcript '" + transcript.id + "'");
  for (std::size_t i = 0; i < transcript.turns.size(); ++i) {
    if (trim(transcript.turns[i].text).empty()) {
      throw ParseError("transcript '" + transcript.id + "' turn " + std::to_string(i) +
                       " has empty text");
    }
  }
}

Transcript parse_transcript(std::string_view raw, TranscriptFormat format,
                            std::string_view fallback_id) {
  if (!valid_utf8(raw)) throw ParseError("input is not valid UTF-8");
  if (trim(raw).empty()) throw ParseError("empty transcript");
  Transcript t = format == TranscriptFormat::TurnMarkedText ? parse_turn_marked(raw, fallback_id)
                                                            : parse_structured(raw, fallback_id);
  validate(t);
  return t;
}

std::string emit_transcript(const Transcript& transcript) {
  json doc;
  doc["id"] = transcript.id;
  doc["metadata"] = json::object();
  for (const auto& [key, value] : transcript.metadata) doc["metadata"][key] = value;
  doc["turns"] = json::array();
  for (const Turn& turn : transcript.turns) {
    doc["turns"].push_back(
        {{"speaker", turn.speaker == Speaker::Interviewer ? "interviewer" : "subject"},
         {"text", turn.text}});
  }
  return doc.dump(2) + "\n";
}

std::string emit_turn_marked(const Transcript& transcript) {
  std::string out = "# id: " + transcript.id + "\n";
  for (const auto& [key, value] : transcript.metadata) out += "# " + key + ": " + value + "\n";
  for (const Turn& turn : transcript.turns) {
    out += turn.speaker == Speaker::Interviewer ? "Q: " : "A: ";
    out += turn.text;
    out += '\n';
  }
  return out;
}

SegmentationResult segment(const Transcript& transcript, SegmentationOptions options) {
  if (options.min_words == 0 || options.min_words >= options.max_words) {
    throw DomainError("segmentation requires 0 < min_words < max_words");
  }
  validate(transcript);

  std::vector<std::string> words;
  std::vector<bool> boundary_after;
  std::vector<WordRange> ranges;
  for (const Turn& turn : transcript.turns) {
    const std::vector<std::string> tw = split_words(turn.text);
    const std::size_t begin = words.size();
    if (turn.speaker == Speaker::Interviewer || ranges.empty()) {
      ranges.push_back({begin, begin});
    }
    for (const std::string& w : tw) {
      boundary_after.push_back(ends_sentence(w));
      words.push_back(w);
    }
    if (!boundary_after.empty()) boundary_after.back() = true;
    ranges.back().end = words.size();
  }

  SegmentationResult result;

  // Merge pass: short segments fold into their successor; the last folds backward.
  for (std::size_t i = 0; i < ranges.size();) {
    if (ranges[i].size() >= options.min_words) {
      ++i;
      continue;
    }
    if (i + 1 < ranges.size()) {
      ranges[i + 1].begin = ranges[i].begin;
      ranges.erase(ranges.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (i > 0) {
      ranges[i - 1].end = ranges[i].end;
      ranges.pop_back();
      break;
    } else {
      result.undersized = true;
      result.warnings.push_back("transcript '" + transcript.id + "' has only " +
                                std::to_string(ranges[i].size()) + " words (< " +
                                std::to_string(options.min_words) + ")");
      ++i;
    }
  }

  // Split pass.
  std::vector<WordRange> split;
  for (const WordRange& r : ranges) {
    if (r.size() <= options.max_words) {
      split.push_back(r);
    } else {
      for (const WordRange& part : split_range(boundary_after, r, options.max_words)) {
        split.push_back(part);
      }
    }
  }

  // Sentence structure can leave a short split part; fold it into a neighbour when that fits.
  for (std::size_t i = 0; split.size() > 1 && i < split.size();) {
    if (split[i].size() >= options.min_words) {
      ++i;
      continue;
    }
    const bool can_next =
        i + 1 < split.size() && split[i].size() + split[i + 1].size() <= options.max_words;
    const bool can_prev = i > 0 && split[i].size() + split[i - 1].size() <= options.max_words;
    if (can_next && (!can_prev || split[i + 1].size() <= split[i - 1].size())) {
      split[i + 1].begin = split[i].begin;
      split.erase(split.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (can_prev) {
      split[i - 1].end = split[i].end;
      split.erase(split.begin() + static_cast<std::ptrdiff_t>(i));
      --i;
    } else {
      result.warnings.push_back("transcript '" + transcript.id + "': segment of " +
                                std::to_string(split[i].size()) +
                                " words could not be merged within max_words");
      ++i;
    }
  }

  result.segments.reserve(split.size());
  for (std::size_t i = 0; i < split.size(); ++i) {
    Segment s;
    s.testimony_id = transcript.id;
    s.seq_index = i;
    s.start_word = split[i].begin;
    s.end_word = split[i].end;
    s.n_words = split[i].size();
    for (std::size_t w = split[i].begin; w < split[i].end; ++w) {
      if (w > split[i].begin) s.text += ' ';
      s.text += words[w];
    }
    result.segments.push_back(std::move(s));
  }
  result.segments = assign_positions(std::move(result.segments));
  return result;
}

std::vector<Segment> assign_positions(std::vector<Segment> segments) {
  if (segments.empty()) return segments;
  std::size_t total = 0;
  for (const Segment& s : segments) {
    if (s.end_word <= s.start_word || s.n_words != s.end_word - s.start_word) {
      throw DomainError("segment " + std::to_string(s.seq_index) + " has an invalid word span");
    }
    total += s.n_words;
  }
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].start_word != segments[i - 1].end_word) {
      throw DomainError("segments must be ordered and contiguous");
    }
  }
  const std::size_t origin = segments.front().start_word;
  for (Segment& s : segments) {
    s.position = (static_cast<double>(s.start_word - origin) + static_cast<double>(s.n_words) / 2.0) /
                 static_cast<double>(total);
  }
  return segments;
}

}  // namespace arcs
