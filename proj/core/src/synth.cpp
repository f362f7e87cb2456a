#include "arcs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "arcs/endpoint.hpp"
#include "arcs/error.hpp"
#include "arcs/eval.hpp"

namespace arcs {
namespace {

using Bank = std::vector<std::string_view>;

const Bank kPracticePlus = {
    "Every Friday night my mother lit the candles and we went to synagogue.",
    "We kept a kosher home and my father went to shul every morning.",
    "I had my bar mitzvah in the big synagogue in our town.",
    "We were an orthodox family and we kept the Sabbath strictly.",
    "Even in the camp we tried to hold a seder for Passover.",
    "My father wore tefillin every day, even in the ghetto.",
};
const Bank kPracticeMinus = {
    "We did not keep kosher and we never went to synagogue.",
    "After the war I stopped going to synagogue altogether.",
    "In hiding I went to church with the family and I was baptized.",
    "We were not religious at all, and we did not keep the Sabbath.",
    "No candles, no Shabbat, nothing like that in our house.",
    "My parents were secular and we never lit candles at home.",
};
const Bank kPracticeOther = {
    "We went to synagogue on the high holidays, but at home we were not religious.",
    "Sometimes we kept kosher at home, but outside we did not keep kosher.",
    "My father went to shul, but I went to church with my friends.",
};
const Bank kBeliefPlus = {
    "I always believed that God was watching over me.",
    "Every night I prayed, and I felt that my faith kept me alive.",
    "It was a miracle, and I thank God for it every day.",
    "I still believe in God after everything that happened.",
};
const Bank kBeliefMinus = {
    "I did not believe in God anymore after what I saw.",
    "I lost my faith in the camps.",
    "After the war I became a nonbeliever.",
    "I could not believe that anyone was up there watching us.",
};
const Bank kBeliefOther = {
    "I believed in God, but I did not believe that he could allow this.",
    "Sometimes I prayed, and sometimes I did not believe at all.",
    "Maybe faith helped me, or maybe I did not believe, I don't know.",
};
const Bank kDistractors = {
    "We were big Zionists and my brother dreamed of Palestine.",
    "My grandmother spoke Yiddish with all the neighbors.",
    "After school I also went to a Hebrew school.",
    "The rabbi of our town was a tall man with a long beard.",
    "My mother cooked traditional Jewish food for the whole family.",
    "I am proud to be a Jew and I tell this to my grandchildren.",
    "The old cemetery was a holy place for the whole town.",
    "I felt that my soul was leaving my body.",
};
const Bank kFillers = {
    "We lived in a small town near the river.",
    "My father had a shop where he sold fabric and buttons.",
    "In the winter the snow was very deep and we walked to school.",
    "I had two brothers and one sister, and I was the youngest.",
    "Then the Germans came into the town and everything changed.",
    "We were taken to the ghetto with only what we could carry.",
    "Later we were put on a train and we traveled for days.",
    "There was very little food and many people became sick.",
    "After the liberation I went back to look for my family.",
    "I met my husband in the displaced persons camp.",
    "We came to America by ship in the spring.",
    "I worked in a factory for many years and raised my children.",
    "My children and grandchildren live nearby and visit often.",
    "I remember the smell of bread from the bakery on the corner.",
    "It was very hard, and we were afraid all the time.",
    "The soldiers took the men away in the morning.",
    "We hid in a barn for several months.",
    "A farmer brought us water and potatoes at night.",
    "My mother sewed clothes for the neighbors to earn a little money.",
    "We slept on straw in a cold room with many other people.",
    "One day my cousin found us and told us the news.",
    "The train stopped in the middle of a forest.",
};
const Bank kQuestions = {
    "What happened next?",
    "Can you tell me about your family?",
    "Where did you go after that?",
    "How old were you at that time?",
    "What do you remember about those days?",
    "Who was with you then?",
    "What was life like at home?",
    "What did you do after the war?",
    "How did you manage to survive?",
    "Tell me about your town.",
};
const Bank kShortQuestions = {"And then?", "Really?", "Why?"};
const Bank kShortAnswers = {"Yes.", "I don't remember.", "Maybe.", "Of course."};

const Bank& bank(Aspect aspect, Polarity p) {
  if (aspect == Aspect::Practice) {
    return p == Polarity::Plus ? kPracticePlus : p == Polarity::Minus ? kPracticeMinus : kPracticeOther;
  }
  return p == Polarity::Plus ? kBeliefPlus : p == Polarity::Minus ? kBeliefMinus : kBeliefOther;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  bool chance(double p) { return unit() < p; }
  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  std::string_view pick(const Bank& b) { return b[between(0, b.size() - 1)]; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), gen_);
  }

 private:
  std::mt19937_64 gen_;
};

std::size_t words_in(std::string_view s) { return split_words(s).size(); }

Polarity polarity_of(int v) {
  return v > 0 ? Polarity::Plus : v < 0 ? Polarity::Minus : Polarity::Other;
}

void check_rate(double r, const char* name) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError(std::string(name) + " must be in [0, 1]");
}

enum class PairKind { Short, Normal, Long };

struct PairPlan {
  PairKind kind = PairKind::Normal;
  std::size_t target = 0;
  std::optional<int> belief;
  std::optional<int> practice;
};

/// Weighted draw of `k` distinct indices from `eligible`, returned sorted.
std::vector<std::size_t> draw_pairs(const std::vector<std::size_t>& eligible, std::size_t k,
                                    std::size_t n_pairs, bool paper_like, Rng& rng) {
  std::vector<std::size_t> pool = eligible;
  std::vector<double> weight;
  for (std::size_t p : pool) {
    const double x = (static_cast<double>(p) + 0.5) / static_cast<double>(n_pairs);
    weight.push_back(paper_like ? 1.0 + 3.0 * (2.0 * x - 1.0) * (2.0 * x - 1.0) : 1.0);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
    double r = rng.unit() * total;
    std::size_t j = 0;
    while (j + 1 < pool.size() && r >= weight[j]) {
      r -= weight[j];
      ++j;
    }
    out.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(j));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t arc_minimum(StructureClass arc, std::size_t runs) {
  switch (arc) {
    case StructureClass::Ascending:
    case StructureClass::Descending: return 2;
    case StructureClass::Oscillating: return runs;
    default: return 1;
  }
}

Period period_at(double x) {
  if (x < 0.35) return Period::Before;
  if (x < 0.6) return Period::During;
  if (x < 0.8) return Period::After;
  return Period::Reflection;
}

}  // namespace

std::vector<TestimonySpec> plan_testimonies(std::size_t n,
                                            const std::map<StructureClass, double>& belief_mix,
                                            const std::map<StructureClass, double>& practice_mix,
                                            std::uint64_t seed) {
  auto apportion = [n](const std::map<StructureClass, double>& mix) {
    std::vector<std::optional<StructureClass>> out;
    double total = 0.0;
    for (const auto& [c, w] : mix) {
      if (w < 0) throw DomainError("arc weights must be non-negative");
      total += w;
    }
    if (mix.empty() || total == 0.0) return std::vector<std::optional<StructureClass>>(n);
    std::vector<std::pair<double, StructureClass>> rem;
    for (const auto& [c, w] : mix) {
      const double q = static_cast<double>(n) * w / total;
      const auto whole = static_cast<std::size_t>(std::floor(q));
      out.insert(out.end(), whole, c);
      rem.emplace_back(q - static_cast<double>(whole), c);
    }
    std::stable_sort(rem.begin(), rem.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; out.size() < n; ++i) out.push_back(rem[i % rem.size()].second);
    return out;
  };
  auto belief = apportion(belief_mix);
  auto practice = apportion(practice_mix);
  Rng rng(derive_seed(seed, "plan", "", ""));
  rng.shuffle(belief);
  rng.shuffle(practice);
  std::vector<TestimonySpec> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id = std::to_string(i + 1);
    id = "T" + std::string(id.size() < 4 ? 4 - id.size() : 0, '0') + id;
    out.push_back({id, belief[i], practice[i]});
  }
  return out;
}

std::vector<int> arc_values(StructureClass arc, std::size_t points, std::size_t oscillation_runs,
                            int oscillation_start) {
  const std::size_t need = arc_minimum(arc, oscillation_runs);
  if (arc == StructureClass::Oscillating && oscillation_runs < 3) {
    throw DomainError("oscillating arcs need at least 3 runs");
  }
  if (points < need) {
    throw DomainError(std::string(structure_name(arc)) + " needs at least " + std::to_string(need) +
                      " points, got " + std::to_string(points));
  }
  std::vector<int> v;
  switch (arc) {
    case StructureClass::ConstantPositive: v.assign(points, 1); break;
    case StructureClass::ConstantNegative: v.assign(points, -1); break;
    case StructureClass::NeutralOnly: v.assign(points, 0); break;
    case StructureClass::Ascending:
    case StructureClass::Descending: {
      const int first = arc == StructureClass::Ascending ? -1 : 1;
      v.assign(points / 2, first);
      v.resize(points, -first);
      break;
    }
    case StructureClass::Oscillating: {
      int sign = oscillation_start >= 0 ? 1 : -1;
      for (std::size_t r = 0; r < oscillation_runs; ++r) {
        const std::size_t len = points / oscillation_runs + (r < points % oscillation_runs ? 1 : 0);
        v.insert(v.end(), len, sign);
        sign = -sign;
      }
      break;
    }
  }
  return v;
}

SynthCorpus synthesize_corpus(const SynthSpec& spec, std::uint64_t seed) {
  check_rate(spec.density, "density");
  check_rate(spec.other_rate, "other_rate");
  check_rate(spec.noise_rate, "noise_rate");
  check_rate(spec.distractor_rate, "distractor_rate");
  if (spec.pairs_min == 0 || spec.pairs_min > spec.pairs_max) {
    throw DomainError("pair range must satisfy 0 < pairs_min <= pairs_max");
  }
  SynthCorpus corpus;
  for (const TestimonySpec& ts : spec.testimonies) {
    Rng rng(derive_seed(seed, "testimony", ts.id, ""));
    SynthTestimony out;
    out.spec = ts;
    out.transcript.id = ts.id;
    out.transcript.metadata["synthetic"] = "true";
    if (ts.belief) out.transcript.metadata["belief_arc"] = std::string(structure_name(*ts.belief));
    if (ts.practice) {
      out.transcript.metadata["practice_arc"] = std::string(structure_name(*ts.practice));
    }

    const std::size_t n_pairs = rng.between(spec.pairs_min, spec.pairs_max);
    std::vector<PairPlan> pairs(n_pairs);
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < n_pairs; ++i) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n_pairs);
      PairPlan& p = pairs[i];
      if (spec.paper_like) {
        if (rng.chance(0.08)) {
          p.kind = PairKind::Short;
        } else if (x > 0.3 && x < 0.7 && rng.chance(0.15)) {
          p.kind = PairKind::Long;
          p.target = rng.between(130, 260);
        } else {
          p.target = rng.between(45, 95);
        }
      } else {
        p.target = rng.between(20, 70);
      }
      if (p.kind != PairKind::Short) eligible.push_back(i);
    }

    for (Aspect aspect : {Aspect::Belief, Aspect::Practice}) {
      const auto& arc = aspect == Aspect::Belief ? ts.belief : ts.practice;
      if (!arc) continue;
      std::size_t k = spec.fixed_points.value_or(std::clamp<std::size_t>(
          static_cast<std::size_t>(std::llround(spec.density * static_cast<double>(n_pairs))),
          spec.min_points, spec.max_points));
      k = std::max(k, arc_minimum(*arc, spec.oscillation_runs));
      const int start = spec.oscillation_start.value_or(rng.chance(0.5) ? 1 : -1);
      std::vector<int> values = arc_values(*arc, k, spec.oscillation_runs, start);
      const std::size_t extra = *arc == StructureClass::NeutralOnly
                                    ? 0
                                    : static_cast<std::size_t>(
                                          std::llround(spec.other_rate * static_cast<double>(k)));
      if (k + extra > eligible.size()) {
        throw DomainError("testimony '" + ts.id + "' has " + std::to_string(eligible.size()) +
                          " usable pairs, fewer than the " + std::to_string(k + extra) +
                          " points to plant");
      }
      const std::vector<std::size_t> chosen =
          draw_pairs(eligible, k + extra, n_pairs, spec.paper_like, rng);
      std::vector<std::size_t> slots(chosen.size());
      std::iota(slots.begin(), slots.end(), 0);
      rng.shuffle(slots);
      std::vector<char> is_other(chosen.size(), 0);
      for (std::size_t e = 0; e < extra; ++e) is_other[slots[e]] = 1;
      std::vector<int> plan;
      std::size_t next = 0;
      for (std::size_t c = 0; c < chosen.size(); ++c) {
        const int v = is_other[c] ? 0 : values[next++];
        (aspect == Aspect::Belief ? pairs[chosen[c]].belief : pairs[chosen[c]].practice) = v;
        plan.push_back(v);
      }
      (aspect == Aspect::Belief ? out.belief_plan : out.practice_plan) = plan;
    }

    std::size_t word = 0;
    for (std::size_t i = 0; i < n_pairs; ++i) {
      const PairPlan& p = pairs[i];
      const std::size_t pair_start = word;
      if (p.kind == PairKind::Short) {
        const std::string_view q = rng.pick(kShortQuestions);
        const std::string_view a = rng.pick(kShortAnswers);
        out.transcript.turns.push_back({Speaker::Interviewer, std::string(q)});
        out.transcript.turns.push_back({Speaker::Subject, std::string(a)});
        word += words_in(q) + words_in(a);
      } else {
        const std::string_view q = rng.pick(kQuestions);
        out.transcript.turns.push_back({Speaker::Interviewer, std::string(q)});
        word += words_in(q);

        struct Sentence {
          std::string_view text;
          std::optional<PlantedSpan> span;
        };
        std::vector<Sentence> special;
        for (Aspect aspect : {Aspect::Belief, Aspect::Practice}) {
          const auto& v = aspect == Aspect::Belief ? p.belief : p.practice;
          if (!v) continue;
          const Polarity gold = polarity_of(*v);
          PlantedSpan span{0, 0, aspect, gold, false};
          Polarity shown = gold;
          if (rng.chance(spec.noise_rate)) {
            std::vector<Polarity> others;
            for (Polarity o : {Polarity::Plus, Polarity::Minus, Polarity::Other}) {
              if (o != gold) others.push_back(o);
            }
            shown = others[rng.between(0, others.size() - 1)];
            span.noisy = true;
          }
          special.push_back({rng.pick(bank(aspect, shown)), span});
        }
        if (special.empty() && rng.chance(spec.distractor_rate)) {
          special.push_back({rng.pick(kDistractors), std::nullopt});
        }
        std::size_t answer_words = 0;
        for (const auto& s : special) answer_words += words_in(s.text);
        std::vector<Sentence> sentences = special;
        while (words_in(q) + answer_words < p.target || sentences.empty()) {
          const std::string_view f = rng.pick(kFillers);
          sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(
                                                   rng.between(0, sentences.size())),
                           {f, std::nullopt});
          answer_words += words_in(f);
        }
        std::string answer;
        for (const auto& s : sentences) {
          const std::size_t w = words_in(s.text);
          if (s.span) {
            PlantedSpan span = *s.span;
            span.start_word = word;
            span.end_word = word + w;
            out.planted.push_back(span);
          }
          if (!answer.empty()) answer += ' ';
          answer += s.text;
          word += w;
        }
        out.transcript.turns.push_back({Speaker::Subject, std::move(answer)});
      }
      const double x = static_cast<double>(i) / static_cast<double>(n_pairs);
      out.periods.push_back({pair_start, word, period_at(x)});
    }
    corpus.testimonies.push_back(std::move(out));
  }
  return corpus;
}

std::vector<ValenceLabel> gold_labels(const SynthTestimony& testimony, std::span<const Segment> segments) {
  std::vector<ValenceLabel> out;
  for (const Segment& s : segments) {
    ValenceLabel label;
    label.source.kind = LabelSource::Kind::Gold;
    for (const PlantedSpan& span : testimony.planted) {
      if (span.end_word <= s.start_word || span.start_word >= s.end_word) continue;
      const Polarity cur = label.get(span.aspect);
      if (cur == Polarity::None) {
        label.set(span.aspect, span.polarity);
      } else if (cur != span.polarity) {
        label.set(span.aspect, Polarity::Other);
      }
    }
    out.push_back(label);
  }
  return out;
}

std::vector<PeriodTag> period_tags(const SynthTestimony& testimony, std::span<const Segment> segments) {
  std::vector<PeriodTag> out;
  for (const Segment& s : segments) {
    for (const PeriodSpan& p : testimony.periods) {
      if (s.start_word >= p.start_word && s.start_word < p.end_word) {
        out.push_back({s.position, p.period});
        break;
      }
    }
  }
  return out;
}

SynthIndex synth_index(std::span<const Segment> segments, std::span<const ValenceLabel> gold,
                       const IndexOptions& options, std::uint64_t seed) {
  if (segments.size() != gold.size()) throw DomainError("segments and gold labels differ in length");
  check_rate(options.reference_rate, "reference_rate");
  check_rate(options.unknown_rate, "unknown_rate");
  static const Bank kThesPP = {"synagogue attendance", "Jewish dietary laws", "Kaddish",
                               "observant/practicing"};
  static const Bank kThesPM = {"church attendance", "baptisms", "non-observant/non-practicing"};
  static const Bank kThesBP = {"Prayers", "Jewish prayers", "Jewish religious beliefs"};
  static const Bank kThesBM = {"Holocaust faith issues", "Christian religious beliefs"};
  static const Bank kTopicP = {"synagogue_holidays_shabbos", "bar_mitzvah_torah"};
  static const Bank kUnknown = {"Zionism", "displaced persons camps", "ghettos"};
  SynthIndex out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    Rng rng(derive_seed(seed, "index", s.testimony_id, std::to_string(s.seq_index)));
    for (Aspect aspect : {Aspect::Belief, Aspect::Practice}) {
      const Polarity p = gold[i].get(aspect);
      if (p == Polarity::None || !rng.chance(options.reference_rate)) continue;
      const double pos =
          std::clamp(s.position + (2.0 * rng.unit() - 1.0) * options.jitter, 0.0, 1.0);
      std::optional<std::string_view> term;
      if (aspect == Aspect::Practice) {
        term = p == Polarity::Plus    ? rng.pick(kThesPP)
               : p == Polarity::Minus ? rng.pick(kThesPM)
                                      : std::string_view("Rabbis");
        out.topics.push_back({s.testimony_id, pos,
                              std::string(p == Polarity::Minus ? std::string_view("catholic_church_priest")
                                                               : rng.pick(kTopicP))});
      } else {
        if (p == Polarity::Plus) term = rng.pick(kThesBP);
        if (p == Polarity::Minus) term = rng.pick(kThesBM);
        out.topics.push_back({s.testimony_id, pos, "god_believe_faith"});
      }
      if (term) out.thesaurus.push_back({s.testimony_id, pos, std::string(*term)});
      if (rng.chance(options.unknown_rate)) {
        out.thesaurus.push_back({s.testimony_id, pos, std::string(rng.pick(kUnknown))});
      }
    }
  }
  return out;
}

std::vector<AnnotationRecord> synth_annotations(std::span<const Segment> segments,
                                                std::span<const ValenceLabel> gold,
                                                const AnnotationOptions& options, std::uint64_t seed) {
  if (segments.size() != gold.size()) throw DomainError("segments and gold labels differ in length");
  check_rate(options.overlap_rate, "overlap_rate");
  check_rate(options.triple_rate, "triple_rate");
  check_rate(options.clean_error, "clean_error");
  check_rate(options.noisy_error, "noisy_error");
  std::vector<AnnotationRecord> out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const std::string item = segment_id(segments[i]);
    Rng rng(derive_seed(seed, "annotate", item, ""));
    std::vector<std::string> annotators{"ann1"};
    if (rng.chance(options.overlap_rate)) {
      annotators.push_back("ann2");
      if (rng.chance(options.triple_rate)) annotators.push_back("ann3");
    }
    const ValenceLabel& g = gold[i];
    const bool content = g.practice != Polarity::None || g.belief != Polarity::None;
    const std::vector<std::pair<AnnotationTask, std::string>> truth = {
        {AnnotationTask::Content, content ? "true" : "false"},
        {AnnotationTask::Practice, std::string(label_name(Aspect::Practice, g.practice))},
        {AnnotationTask::Belief, std::string(label_name(Aspect::Belief, g.belief))},
    };
    for (const std::string& who : annotators) {
      const double error = who == "ann3" ? options.noisy_error : options.clean_error;
      for (const auto& [task, label] : truth) {
        std::string chosen = label;
        if (rng.chance(error)) {
          std::vector<std::string> others;
          for (const std::string& l : task_labels(task)) {
            if (l != label) others.push_back(l);
          }
          chosen = others[rng.between(0, others.size() - 1)];
        }
        out.push_back({item, who, task, chosen});
      }
    }
  }
  return out;
}

}  // namespace arcs
