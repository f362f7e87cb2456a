#include "arcs/keyword_oracle.hpp"

#include <algorithm>
#include <cctype>

namespace arcs {
namespace {

struct Token {
  std::string text;
  std::size_t sentence;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t sentence = 0;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back({current, sentence});
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isalnum(c)) {
      current += static_cast<char>(std::tolower(c));
    } else if (c == '\'') {
      if (!current.empty()) current += '\'';
    } else if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
               static_cast<unsigned char>(text[i + 2]) == 0x99) {
      // U+2019 right single quote, used as apostrophe.
      if (!current.empty()) current += '\'';
      i += 2;
    } else {
      flush();
      if (c == '.' || c == '?' || c == '!') ++sentence;
    }
  }
  flush();
  for (Token& t : tokens) {
    while (!t.text.empty() && t.text.back() == '\'') t.text.pop_back();
  }
  std::erase_if(tokens, [](const Token& t) { return t.text.empty(); });
  return tokens;
}

std::vector<std::string> phrase_tokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(phrase)) out.push_back(t.text);
  return out;
}

Polarity flip(Polarity p) {
  if (p == Polarity::Plus) return Polarity::Minus;
  if (p == Polarity::Minus) return Polarity::Plus;
  return p;
}

Polarity resolve(bool plus, bool minus) {
  if (plus && minus) return Polarity::Other;
  if (plus) return Polarity::Plus;
  if (minus) return Polarity::Minus;
  return Polarity::None;
}

}  // namespace

OracleLexicon OracleLexicon::defaults() {
  OracleLexicon lex;
  auto add = [&](Aspect aspect, Polarity polarity, int tier,
                 std::initializer_list<const char*> phrases) {
    for (const char* p : phrases) lex.cues.push_back({p, aspect, polarity, tier});
  };
  using enum Aspect;
  using enum Polarity;
  add(Practice, Plus, 1,
      {"synagogue", "synagogues", "shul", "kosher", "shabbat", "shabbos", "sabbath", "bar mitzvah",
       "bat mitzvah", "bar mitzvahed", "seder", "pesach", "passover", "yom kippur", "rosh hashanah",
       "orthodox", "religious", "observant", "tefillin", "candles", "kiddush", "yeshiva",
       "yeshivas", "yeshivot", "davening", "mikvah", "kaddish"});
  add(Practice, Minus, 1,
      {"church", "baptized", "baptism", "communion", "crucifix", "converted", "secular",
       "nonreligious"});
  add(Practice, Plus, 2,
      {"holiday", "holidays", "high holidays", "hanukkah", "chanukah", "purim", "friday night"});
  add(Practice, Plus, 3,
      {"jewish", "jew", "jews", "rabbi", "rabbis", "hebrew", "yiddish", "zionist", "zionists",
       "zionism", "tradition", "traditional"});
  add(Belief, Plus, 1,
      {"believe", "believed", "believer", "believing", "faith", "pray", "prayed", "praying",
       "prayer", "prayers", "hashem", "miracle", "miracles", "thank god", "baruch hashem",
       "god will help"});
  add(Belief, Minus, 1,
      {"nonbeliever", "nonbelievers", "atheist", "atheists", "lost my faith", "lost faith",
       "lost his faith", "lost our faith"});
  add(Belief, Plus, 2, {"god", "lord", "heaven", "almighty", "creator"});
  add(Belief, Plus, 3, {"holy", "soul", "spiritual", "blessed"});
  lex.negations = {"not", "no", "never", "nothing", "without", "nor", "neither", "stopped",
                   "didn't", "don't", "doesn't", "wasn't", "weren't", "isn't", "aren't",
                   "couldn't", "wouldn't", "won't", "haven't", "hadn't", "cannot"};
  return lex;
}

KeywordOracle::KeywordOracle(OracleLexicon lexicon) : lexicon_(std::move(lexicon)) {
  for (const Cue& cue : lexicon_.cues) {
    CompiledCue c{phrase_tokens(cue.phrase), &cue};
    if (!c.tokens.empty()) compiled_.push_back(std::move(c));
  }
  std::stable_sort(compiled_.begin(), compiled_.end(),
                   [](const CompiledCue& a, const CompiledCue& b) {
                     return a.tokens.size() > b.tokens.size();
                   });
}

std::vector<KeywordOracle::Hit> KeywordOracle::scan(std::string_view text) const {
  const std::vector<Token> tokens = tokenize(text);
  auto is_negation = [&](const std::string& t) {
    return std::find(lexicon_.negations.begin(), lexicon_.negations.end(), t) !=
               lexicon_.negations.end() ||
           (t.size() > 3 && t.compare(t.size() - 3, 3, "n't") == 0);
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < tokens.size();) {
    const CompiledCue* match = nullptr;
    for (const CompiledCue& c : compiled_) {
      if (i + c.tokens.size() > tokens.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < c.tokens.size() && ok; ++k) {
        ok = tokens[i + k].text == c.tokens[k] && tokens[i + k].sentence == tokens[i].sentence;
      }
      if (ok) {
        match = &c;
        break;
      }
    }
    if (match == nullptr) {
      ++i;
      continue;
    }
    bool negated = false;
    const std::size_t from = i >= lexicon_.negation_window ? i - lexicon_.negation_window : 0;
    for (std::size_t k = from; k < i; ++k) {
      if (tokens[k].sentence == tokens[i].sentence && is_negation(tokens[k].text)) negated = true;
    }
    hits.push_back({i, match->cue, negated ? flip(match->cue->polarity) : match->cue->polarity});
    i += match->tokens.size();
  }
  return hits;
}

bool KeywordOracle::content_text(std::string_view text) const {
  for (const Hit& h : scan(text)) {
    if (h.cue->tier <= 2) return true;
  }
  return false;
}

ValenceLabel KeywordOracle::label_text(std::string_view text) const {
  const std::vector<Hit> hits = scan(text);
  ValenceLabel out;
  out.source.kind = LabelSource::Kind::Oracle;
  for (Aspect aspect : kAllAspects) {
    Polarity result = Polarity::None;
    for (int tier = 1; tier <= 3 && result == Polarity::None; ++tier) {
      bool plus = false;
      bool minus = false;
      for (const Hit& h : hits) {
        if (h.cue->aspect != aspect || h.cue->tier != tier) continue;
        plus |= h.polarity == Polarity::Plus;
        minus |= h.polarity == Polarity::Minus;
      }
      result = resolve(plus, minus);
    }
    out.set(aspect, result);
  }
  return out;
}

bool KeywordOracle::contains_religious_content(const Segment& segment) {
  return content_text(segment.text);
}

ValenceLabel KeywordOracle::label(const Segment& segment) { return label_text(segment.text); }

}  // namespace arcs
