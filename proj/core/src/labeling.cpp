#include "arcs/labeling.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "arcs/error.hpp"
#include "arcs/parallel.hpp"

namespace arcs {
namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Unescapes {{ and }} and locates the single placeholder.
void compile_body(const std::string& body, std::string& prefix, std::string& suffix) {
  std::string* out = &prefix;
  int placeholders = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '{') {
      if (i + 1 < body.size() && body[i + 1] == '{') {
        *out += '{';
        ++i;
      } else if (body.compare(i, PromptTemplate::kPlaceholder.size(),
                              PromptTemplate::kPlaceholder) == 0) {
        ++placeholders;
        out = &suffix;
        i += PromptTemplate::kPlaceholder.size() - 1;
      } else {
        throw TemplateError("unescaped '{' at offset " + std::to_string(i));
      }
    } else if (c == '}') {
      if (i + 1 < body.size() && body[i + 1] == '}') {
        *out += '}';
        ++i;
      } else {
        throw TemplateError("unescaped '}' at offset " + std::to_string(i));
      }
    } else {
      *out += c;
    }
  }
  if (placeholders != 1) {
    throw TemplateError("template body must contain exactly one " +
                        std::string(PromptTemplate::kPlaceholder) + " placeholder (found " +
                        std::to_string(placeholders) + ")");
  }
}

constexpr std::string_view kBeliefInstructions =
    R"(Your task is to carefully read this text and determine the speaker's valence of Jewish religious belief in God, based on the following classification system:
    POSITIVE: The text expresses the narrator's belief in God according to the Jewish religion, or his existing relationship with God.

    NEGATIVE: The text expresses the narrator's lack of belief in God according to the Jewish religion or a rejection of religious beliefs.

    AMBIGUOUS: The text expresses a relationship with God that does not meet the criteria of the classes POSITIVE or NEGATIVE. This includes questioning God while believing in his existence.

    NONE: The text does not directly imply the speaker's belief in God and religion or their lack of it. This includes texts written in the third person that do not describe the speaker's personal beliefs or family environment.

First, write out your reasoning for classifying the text inside <reasoning> tags. Consider the content and tone of the text, and how it aligns with the definitions provided above.
After writing your reasoning, output your final classification as a single word (POSITIVE, NEGATIVE, AMBIGUOUS, or NONE) inside <classification> tags.
Use HTML tags in your response.

Do not add any words after </classification>.
)";

constexpr std::string_view kPracticeInstructions =
    R"(Your task is to carefully read this text and determine the speaker's valence of Jewish religious practice described in the text, if any, based on the following classification system:
    1. ACTIVE = The text expresses the narrator actively practicing a Jewish religious ritual.
    2. INACTIVE = The text expresses the narrator violating Jewish religious practices or not observing/actively not practicing a Jewish religious ritual.
    3. AMBIGUOUS = The narrator of the text expresses a Jewish religious practice, that does not meet the criteria of the classes ACTIVE or INACTIVE, or the text matches both of the classes at the same time.
    4. NONE = The text does not directly discuss the speaker participating in a religious practice or violating one. This includes texts written in the third person that do not describe the speaker's personal valence of practicing religion or family environment.

First, write out your reasoning for classifying the text inside <reasoning> tags. Consider the content and tone of the text, and how it aligns with the definitions provided above.
After writing your reasoning, output your final classification as a single word (ACTIVE, INACTIVE, AMBIGUOUS, or NONE) inside <classification> tags.
Use HTML tags in your response.
Do not add any words after </classification>.
)";

constexpr std::string_view kBeliefExamples = R"(
Examples:

Text: "I didn't believe there was a god. I didn't want to know such a thing as a god."
<classification>NEGATIVE</classification>

Text: "But I still believe in God. And I hope that I will see, too."
<classification>POSITIVE</classification>

Text: "Maybe God helped me to somehow that he didn't pick me every time. I don't know."
<classification>AMBIGUOUS</classification>
)";

constexpr std::string_view kPracticeExamples = R"(
Examples:

Text: "When did you have a Bar mitzvah? When I was 13. In the main synagogue."
<classification>ACTIVE</classification>

Text: "Did you observe Shabbat in any way, light candles, go to synagogue? No, no, no candles, no Shabbat."
<classification>INACTIVE</classification>

Text: "Was there davening on the train? Yeah. Sure, they were davening."
<classification>AMBIGUOUS</classification>
)";

constexpr std::string_view kContentInstructions =
    R"(Your task is to decide whether the text describes Jewish religious practices or beliefs of the speaker or their family, or explicitly indicates their absence.
Count rituals, observance, prayer, synagogue life, religious schooling, faith in God, and statements of not being religious.
Do not count Zionism, Jewish identity or culture, Jewish food or music, or speaking Yiddish.

First, write out your reasoning inside <reasoning> tags.
Then output TRUE or FALSE inside <classification> tags.
Do not add any words after </classification>.
)";

std::string assemble(std::string_view instructions, std::string_view examples) {
  std::string body(instructions);
  body += examples;
  body += "\nText:\n<text>\n{segment}\n</text>\n";
  return body;
}

std::vector<PromptTemplate> make_builtins() {
  const std::vector<std::string> belief = {"POSITIVE", "NEGATIVE", "AMBIGUOUS", "NONE"};
  const std::vector<std::string> practice = {"ACTIVE", "INACTIVE", "AMBIGUOUS", "NONE"};
  return {
      PromptTemplate("belief-zero", PromptAspect::Belief, assemble(kBeliefInstructions, {}), belief,
                     ShotStyle::Zero),
      PromptTemplate("belief-few", PromptAspect::Belief,
                     assemble(kBeliefInstructions, kBeliefExamples), belief, ShotStyle::Few),
      PromptTemplate("practice-zero", PromptAspect::Practice, assemble(kPracticeInstructions, {}),
                     practice, ShotStyle::Zero),
      PromptTemplate("practice-few", PromptAspect::Practice,
                     assemble(kPracticeInstructions, kPracticeExamples), practice, ShotStyle::Few),
      PromptTemplate("content-zero", PromptAspect::Content, assemble(kContentInstructions, {}),
                     {"TRUE", "FALSE"}, ShotStyle::Zero),
  };
}

const std::vector<PromptTemplate>& builtins() {
  static const std::vector<PromptTemplate> templates = make_builtins();
  return templates;
}

}  // namespace

std::string_view prompt_aspect_name(PromptAspect aspect) {
  switch (aspect) {
    case PromptAspect::Practice: return "practice";
    case PromptAspect::Belief: return "belief";
    case PromptAspect::Content: return "content";
  }
  return "content";
}

PromptAspect to_prompt_aspect(Aspect aspect) {
  return aspect == Aspect::Practice ? PromptAspect::Practice : PromptAspect::Belief;
}

PromptTemplate::PromptTemplate(std::string id, PromptAspect aspect, std::string body,
                               std::vector<std::string> allowed_labels, ShotStyle shot_style)
    : id_(std::move(id)),
      aspect_(aspect),
      body_(std::move(body)),
      allowed_labels_(std::move(allowed_labels)),
      shot_style_(shot_style) {
  if (id_.empty()) throw TemplateError("template id is empty");
  if (allowed_labels_.empty()) throw TemplateError("template '" + id_ + "' has no allowed labels");
  try {
    compile_body(body_, prefix_, suffix_);
  } catch (const TemplateError& e) {
    throw TemplateError("template '" + id_ + "': " + e.what());
  }
}

std::string PromptTemplate::render(std::string_view segment_text) const {
  std::string out;
  out.reserve(prefix_.size() + segment_text.size() + suffix_.size());
  out += prefix_;
  out += segment_text;
  out += suffix_;
  return out;
}

std::optional<std::string> PromptTemplate::extract(std::string_view rendered) const {
  if (rendered.size() < prefix_.size() + suffix_.size()) return std::nullopt;
  if (rendered.substr(0, prefix_.size()) != prefix_) return std::nullopt;
  if (rendered.substr(rendered.size() - suffix_.size()) != suffix_) return std::nullopt;
  return std::string(
      rendered.substr(prefix_.size(), rendered.size() - prefix_.size() - suffix_.size()));
}

std::string render_prompt(const PromptTemplate& tmpl, const Segment& segment) {
  return tmpl.render(segment.text);
}

const PromptTemplate& builtin_template(std::string_view id) {
  for (const PromptTemplate& t : builtins()) {
    if (t.id() == id) return t;
  }
  throw TemplateError("unknown template '" + std::string(id) + "'");
}

std::vector<std::string> builtin_template_ids() {
  std::vector<std::string> ids;
  for (const PromptTemplate& t : builtins()) ids.push_back(t.id());
  return ids;
}

ParseResult<std::string> extract_classification(std::string_view raw) {
  static constexpr std::string_view kOpen = "<classification>";
  static constexpr std::string_view kClose = "</classification>";
  const std::string folded = lower(raw);
  const std::size_t open = folded.find(kOpen);
  if (open == std::string::npos) return ParseResult<std::string>::failure("missing <classification> tag");
  const std::size_t close = folded.find(kClose, open);
  if (close == std::string::npos) {
    return ParseResult<std::string>::failure("missing </classification> tag");
  }
  if (folded.find(kOpen, open + kOpen.size()) != std::string::npos) {
    return ParseResult<std::string>::failure("duplicated <classification> tag");
  }
  const std::string_view token =
      trim(raw.substr(open + kOpen.size(), close - open - kOpen.size()));
  if (token.empty()) return ParseResult<std::string>::failure("empty classification");
  if (token.find_first_of(" \t\r\n") != std::string_view::npos) {
    return ParseResult<std::string>::failure("classification is not a single token");
  }
  return ParseResult<std::string>::success(upper(token));
}

ParseResult<Polarity> parse_model_response(std::string_view raw, Aspect aspect) {
  const ParseResult<std::string> token = extract_classification(raw);
  if (!token.ok()) return ParseResult<Polarity>::failure(token.error);
  const std::string& t = *token.value;
  if (t == "AMBIGUOUS") return ParseResult<Polarity>::success(Polarity::Other);
  if (t == "NONE") return ParseResult<Polarity>::success(Polarity::None);
  if (aspect == Aspect::Belief) {
    if (t == "POSITIVE") return ParseResult<Polarity>::success(Polarity::Plus);
    if (t == "NEGATIVE") return ParseResult<Polarity>::success(Polarity::Minus);
  } else {
    if (t == "ACTIVE") return ParseResult<Polarity>::success(Polarity::Plus);
    if (t == "INACTIVE") return ParseResult<Polarity>::success(Polarity::Minus);
  }
  return ParseResult<Polarity>::failure("'" + t + "' is not an allowed " +
                                        std::string(aspect_name(aspect)) + " label");
}

ParseResult<bool> parse_content_response(std::string_view raw) {
  const ParseResult<std::string> token = extract_classification(raw);
  if (!token.ok()) return ParseResult<bool>::failure(token.error);
  if (*token.value == "TRUE") return ParseResult<bool>::success(true);
  if (*token.value == "FALSE") return ParseResult<bool>::success(false);
  return ParseResult<bool>::failure("'" + *token.value + "' is not TRUE or FALSE");
}

std::string synthesize_response(Polarity polarity, Aspect aspect, std::string_view reasoning) {
  std::string token;
  switch (polarity) {
    case Polarity::Plus: token = aspect == Aspect::Belief ? "POSITIVE" : "ACTIVE"; break;
    case Polarity::Minus: token = aspect == Aspect::Belief ? "NEGATIVE" : "INACTIVE"; break;
    case Polarity::Other: token = "AMBIGUOUS"; break;
    case Polarity::None: token = "NONE"; break;
  }
  return "<reasoning>" + std::string(reasoning) + "</reasoning>\n<classification>" + token +
         "</classification>";
}

VoteOutcome aggregate_votes(std::span<const ParseResult<Polarity>> samples) {
  VoteOutcome out;
  for (const auto& s : samples) {
    if (s.ok()) {
      ++out.tally.counts[*s.value];
    } else {
      ++out.tally.parse_failures;
    }
  }
  if (out.tally.counts.empty()) {
    throw LabelingError("all " + std::to_string(samples.size()) + " samples failed to parse");
  }
  int best = 0;
  int leaders = 0;
  for (const auto& [label, count] : out.tally.counts) {
    if (count > best) {
      best = count;
      leaders = 1;
      out.label = label;
    } else if (count == best) {
      ++leaders;
    }
  }
  if (leaders > 1) out.label = Polarity::Other;
  return out;
}

bool aggregate_content_votes(std::span<const ParseResult<bool>> samples) {
  int yes = 0;
  int no = 0;
  for (const auto& s : samples) {
    if (!s.ok()) continue;
    (*s.value ? yes : no) += 1;
  }
  if (yes + no == 0) {
    throw LabelingError("all " + std::to_string(samples.size()) + " samples failed to parse");
  }
  return yes > no;
}

bool classify_content(const Segment& segment, ContentClassifier& classifier) {
  if (segment.text.empty()) return false;
  return classifier.contains_religious_content(segment);
}

ValenceLabel label_valence(const Segment& segment, ValenceLabeler& labeler) {
  return labeler.label(segment);
}

std::vector<ValenceLabel> label_all(std::span<const Segment> segments, ValenceLabeler& labeler,
                                    unsigned threads) {
  std::vector<ValenceLabel> out(segments.size());
  detail::parallel_for(segments.size(), threads,
                       [&](std::size_t i) { out[i] = labeler.label(segments[i]); });
  return out;
}

std::vector<bool> classify_all(std::span<const Segment> segments, ContentClassifier& classifier,
                               unsigned threads) {
  std::vector<char> flags(segments.size(), 0);
  detail::parallel_for(segments.size(), threads, [&](std::size_t i) {
    flags[i] = classify_content(segments[i], classifier) ? 1 : 0;
  });
  return {flags.begin(), flags.end()};
}

}  // namespace arcs
