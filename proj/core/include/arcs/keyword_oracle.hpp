#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "arcs/labeling.hpp"

namespace arcs {

/// A keyword or multi-word phrase that signals one aspect.
///
/// Tier 1 cues decide valence; tier 2 cues (topic nouns such as "god") only
/// count when the segment has no tier 1 cue for that aspect; tier 3 cues are
/// weak signals (identity, culture) that never mark religious content and only
/// apply when neither higher tier fired.
struct Cue {
  std::string phrase;
  Aspect aspect = Aspect::Practice;
  Polarity polarity = Polarity::Plus;
  int tier = 1;
};

struct OracleLexicon {
  std::vector<Cue> cues;
  std::vector<std::string> negations;
  std::size_t negation_window = 4;

  static OracleLexicon defaults();
};

/// Deterministic keyword labeler used as a test stand-in for a trained
/// classifier. A negation word within `negation_window` tokens before a cue
/// (same sentence) flips the cue's sign; mixed signs on one aspect give Other.
class KeywordOracle final : public ContentClassifier, public ValenceLabeler {
 public:
  struct Hit {
    std::size_t token = 0;
    const Cue* cue = nullptr;
    Polarity polarity = Polarity::Plus;  // after negation
  };

  explicit KeywordOracle(OracleLexicon lexicon = OracleLexicon::defaults());

  bool contains_religious_content(const Segment& segment) override;
  ValenceLabel label(const Segment& segment) override;

  bool content_text(std::string_view text) const;
  ValenceLabel label_text(std::string_view text) const;
  std::vector<Hit> scan(std::string_view text) const;

  const OracleLexicon& lexicon() const { return lexicon_; }

 private:
  struct CompiledCue {
    std::vector<std::string> tokens;
    const Cue* cue;
  };

  OracleLexicon lexicon_;
  std::vector<CompiledCue> compiled_;  // longest phrase first
};

}  // namespace arcs
