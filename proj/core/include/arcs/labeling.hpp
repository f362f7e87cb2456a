#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/corpus.hpp"
#include "arcs/labels.hpp"

namespace arcs {

enum class PromptAspect { Practice, Belief, Content };
enum class ShotStyle { Zero, One, Few };

std::string_view prompt_aspect_name(PromptAspect aspect);
PromptAspect to_prompt_aspect(Aspect aspect);

/// Prompt body with exactly one `{segment}` placeholder. Literal braces in the
/// body are written `{{` and `}}`.
class PromptTemplate {
 public:
  static constexpr std::string_view kPlaceholder = "{segment}";

  /// Throws TemplateError when the body has no placeholder (or more than one),
  /// an unmatched brace, or an empty label set.
  PromptTemplate(std::string id, PromptAspect aspect, std::string body,
                 std::vector<std::string> allowed_labels, ShotStyle shot_style = ShotStyle::Zero);

  const std::string& id() const { return id_; }
  PromptAspect aspect() const { return aspect_; }
  const std::string& body() const { return body_; }
  const std::vector<std::string>& allowed_labels() const { return allowed_labels_; }
  ShotStyle shot_style() const { return shot_style_; }

  /// Segment text is inserted verbatim; it is never re-scanned for placeholders.
  std::string render(std::string_view segment_text) const;
  /// Inverse of render: the segment text, or nullopt if `rendered` did not come from this template.
  std::optional<std::string> extract(std::string_view rendered) const;

 private:
  std::string id_;
  PromptAspect aspect_;
  std::string body_;
  std::vector<std::string> allowed_labels_;
  ShotStyle shot_style_;
  std::string prefix_;
  std::string suffix_;
};

std::string render_prompt(const PromptTemplate& tmpl, const Segment& segment);

/// Built-in templates: belief-zero, belief-few, practice-zero, practice-few, content-zero.
const PromptTemplate& builtin_template(std::string_view id);
std::vector<std::string> builtin_template_ids();

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
  static ParseResult success(T v) { return {std::move(v), {}}; }
  static ParseResult failure(std::string why) { return {std::nullopt, std::move(why)}; }
};

/// Upper-cased token between the single <classification>...</classification> pair.
ParseResult<std::string> extract_classification(std::string_view raw);

/// ACTIVE/INACTIVE (practice) or POSITIVE/NEGATIVE (belief), AMBIGUOUS -> Other, NONE -> None.
ParseResult<Polarity> parse_model_response(std::string_view raw, Aspect aspect);
/// TRUE / FALSE.
ParseResult<bool> parse_content_response(std::string_view raw);

/// Canonical response text for a label; parse_model_response(synthesize_response(p, a), a) == p.
std::string synthesize_response(Polarity polarity, Aspect aspect, std::string_view reasoning = {});

struct VoteOutcome {
  Polarity label = Polarity::None;
  VoteTally tally;
};

/// Plurality over the parsed samples. A tie for the top count resolves to Other.
/// Throws LabelingError when no sample parsed.
VoteOutcome aggregate_votes(std::span<const ParseResult<Polarity>> samples);

/// Same rule over content votes; ties resolve to false.
bool aggregate_content_votes(std::span<const ParseResult<bool>> samples);

class ContentClassifier {
 public:
  virtual ~ContentClassifier() = default;
  virtual bool contains_religious_content(const Segment& segment) = 0;
};

class ValenceLabeler {
 public:
  virtual ~ValenceLabeler() = default;
  virtual ValenceLabel label(const Segment& segment) = 0;
};

bool classify_content(const Segment& segment, ContentClassifier& classifier);
ValenceLabel label_valence(const Segment& segment, ValenceLabeler& labeler);

/// Labels `segments` with up to `threads` workers; output order matches input.
/// The labeler must be safe for concurrent use when threads > 1.
std::vector<ValenceLabel> label_all(std::span<const Segment> segments, ValenceLabeler& labeler,
                                    unsigned threads = 1);
std::vector<bool> classify_all(std::span<const Segment> segments, ContentClassifier& classifier,
                               unsigned threads = 1);

}  // namespace arcs
