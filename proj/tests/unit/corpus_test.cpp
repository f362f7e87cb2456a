#include <gtest/gtest.h>

#include <random>

#include "arcs/corpus.hpp"
#include "arcs/error.hpp"
#include "test_support.hpp"

namespace arcs {
namespace {

using testing::qa_transcript;

std::vector<std::size_t> counts(const std::vector<Segment>& segs) {
  std::vector<std::size_t> out;
  for (const Segment& s : segs) out.push_back(s.n_words);
  return out;
}

TEST(ParseTranscript, TurnMarkedTwoLines) {
  const Transcript t = parse_transcript("Q: How?\nA: Fine.\n", TranscriptFormat::TurnMarkedText, "t1");
  ASSERT_EQ(t.turns.size(), 2u);
  EXPECT_EQ(t.id, "t1");
  EXPECT_EQ(t.turns[0].speaker, Speaker::Interviewer);
  EXPECT_EQ(t.turns[0].text, "How?");
  EXPECT_EQ(t.turns[1].speaker, Speaker::Subject);
}

TEST(ParseTranscript, NormalizesWhitespace) {
  const Transcript t = parse_transcript("Q:   How   are\tyou?\r\nA: Fine.", TranscriptFormat::TurnMarkedText, "t");
  EXPECT_EQ(t.turns[0].text, "How are you?");
}

TEST(ParseTranscript, MissingPrefixNamesLine) {
  try {
    parse_transcript("Q: Hello?\nA: Yes.\nno prefix here\n", TranscriptFormat::TurnMarkedText, "t");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseTranscript, EmptyInputIsError) {
  EXPECT_THROW(parse_transcript("", TranscriptFormat::TurnMarkedText, "t"), ParseError);
  EXPECT_THROW(parse_transcript("  \n \n", TranscriptFormat::Structured, "t"), ParseError);
}

TEST(ParseTranscript, RejectsInvalidUtf8) {
  EXPECT_THROW(parse_transcript("Q: caf\xC3\n", TranscriptFormat::TurnMarkedText, "t"), ParseError);
}

TEST(ParseTranscript, MetadataLines) {
  const Transcript t =
      parse_transcript("# id: abc\n# lang: en\nQ: Hi?\nA: Hello.", TranscriptFormat::TurnMarkedText);
  EXPECT_EQ(t.id, "abc");
  EXPECT_EQ(t.metadata.at("lang"), "en");
}

TEST(ParseTranscript, StructuredThreeTurnsRoundTrip) {
  Transcript t;
  t.id = "s1";
  t.metadata["source"] = "test";
  t.turns = {{Speaker::Interviewer, "Where were you born?"},
             {Speaker::Subject, "In a small town."},
             {Speaker::Interviewer, "And then?"}};
  const Transcript back = parse_transcript(emit_transcript(t), TranscriptFormat::Structured);
  EXPECT_EQ(back, t);
  ASSERT_EQ(back.turns.size(), 3u);
  EXPECT_EQ(back.turns[2].speaker, Speaker::Interviewer);
}

TEST(ParseTranscript, StructuredErrors) {
  EXPECT_THROW(parse_transcript("{\"id\":\"x\"}", TranscriptFormat::Structured), ParseError);
  EXPECT_THROW(parse_transcript("{\"id\":\"x\",\"turns\":[{\"speaker\":\"judge\",\"text\":\"a\"}]}",
                                TranscriptFormat::Structured),
               ParseError);
  EXPECT_THROW(parse_transcript("[1,2]", TranscriptFormat::Structured), ParseError);
  EXPECT_THROW(parse_transcript("{not json", TranscriptFormat::Structured), ParseError);
}

TEST(ParseTranscript, TurnMarkedRoundTrip) {
  Transcript t = qa_transcript({{3, 12}, {4, 20}}, 5, "rt");
  t.metadata["k"] = "v";
  EXPECT_EQ(parse_transcript(emit_turn_marked(t), TranscriptFormat::TurnMarkedText), t);
}

TEST(Segment, MergeThenThreeWaySplit) {
  // Pairs of 7, 60 and 230 words; the last pair is one-word sentences.
  Transcript t;
  t.id = "m";
  t.turns = {{Speaker::Interviewer, "Tell me."},
             {Speaker::Subject, testing::words(5)},
             {Speaker::Interviewer, testing::words(5, 1000, "ask")},
             {Speaker::Subject, testing::words(55, 11)},
             {Speaker::Interviewer, "Go."},
             {Speaker::Subject, testing::words(229, 1)}};
  const SegmentationResult r = segment(t);
  const std::vector<std::size_t> c = counts(r.segments);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[0], 67u);
  EXPECT_EQ(std::max({c[1], c[2], c[3]}), 77u);
  EXPECT_EQ(std::min({c[1], c[2], c[3]}), 76u);
  EXPECT_EQ(c[1] + c[2] + c[3], 230u);
  EXPECT_FALSE(r.undersized);
}

TEST(Segment, SinglePairUnchanged) {
  const SegmentationResult r = segment(qa_transcript({{10, 40}}));
  EXPECT_EQ(counts(r.segments), std::vector<std::size_t>{50});
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Segment, BothPairsBelowThresholdWarns) {
  const SegmentationResult r = segment(qa_transcript({{2, 3}, {2, 2}}));
  EXPECT_EQ(counts(r.segments), std::vector<std::size_t>{9});
  EXPECT_TRUE(r.undersized);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Segment, LastShortPairMergesBackward) {
  const SegmentationResult r = segment(qa_transcript({{5, 40}, {5, 30}, {2, 3}}));
  EXPECT_EQ(counts(r.segments), (std::vector<std::size_t>{45, 40}));
}

TEST(Segment, ShortPairsCascadeForward) {
  const SegmentationResult r = segment(qa_transcript({{2, 2}, {2, 2}, {2, 2}, {5, 20}}));
  EXPECT_EQ(counts(r.segments), (std::vector<std::size_t>{12, 25}));
}

TEST(Segment, RejectsBadThresholds) {
  EXPECT_THROW(segment(qa_transcript({{5, 20}}), {0, 100}), DomainError);
  EXPECT_THROW(segment(qa_transcript({{5, 20}}), {50, 50}), DomainError);
}

TEST(Segment, WordSpansCoverTranscript) {
  const Transcript t = qa_transcript({{4, 8}, {6, 130}, {3, 40}}, 7);
  const SegmentationResult r = segment(t);
  std::size_t expect_start = 0;
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    EXPECT_EQ(r.segments[i].seq_index, i);
    EXPECT_EQ(r.segments[i].start_word, expect_start);
    EXPECT_EQ(r.segments[i].end_word - r.segments[i].start_word, r.segments[i].n_words);
    expect_start = r.segments[i].end_word;
  }
  EXPECT_EQ(expect_start, word_count(t));
}

TEST(AssignPositions, Examples) {
  auto make = [](std::vector<std::size_t> ns) {
    std::vector<Segment> segs;
    std::size_t start = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      segs.push_back({"t", i, start, start + ns[i], ns[i], "", 0.0});
      start += ns[i];
    }
    return assign_positions(segs);
  };
  auto pos = [](const std::vector<Segment>& s) {
    std::vector<double> out;
    for (const Segment& x : s) out.push_back(x.position);
    return out;
  };
  EXPECT_EQ(pos(make({50, 50})), (std::vector<double>{0.25, 0.75}));
  const std::vector<double> p = pos(make({10, 30, 60}));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p[0], 0.05);
  EXPECT_DOUBLE_EQ(p[1], 0.25);
  EXPECT_DOUBLE_EQ(p[2], 0.70);
  EXPECT_EQ(pos(make({17})), std::vector<double>{0.5});
  EXPECT_TRUE(assign_positions({}).empty());
}

// Random transcripts: reconstruction, size bounds and position ordering.
TEST(SegmentProperty, InvariantsOnRandomTranscripts) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pairs(1, 25), q(0, 15), a(0, 260), slen(1, 30);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<std::size_t, std::size_t>> spec;
    const std::size_t n = pairs(rng);
    for (std::size_t i = 0; i < n; ++i) spec.emplace_back(q(rng) + 1, a(rng));
    const Transcript t = qa_transcript(spec, slen(rng));
    const SegmentationResult r = segment(t);
    std::string joined;
    std::size_t small = 0;
    double last = 0.0;
    for (const Segment& s : r.segments) {
      if (!joined.empty()) joined += ' ';
      joined += s.text;
      EXPECT_LE(s.n_words, 100u);
      if (s.n_words < 10) ++small;
      EXPECT_GT(s.position, last);
      EXPECT_LT(s.position, 1.0);
      last = s.position;
    }
    EXPECT_LE(small, 1u);
    EXPECT_EQ(normalize_whitespace(joined), normalize_whitespace(transcript_text(t)));
  }
}

TEST(SegmentProperty, ReversalMirrorsPositionsForEqualWidths) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < 6; ++i) segs.push_back({"t", i, i * 20, i * 20 + 20, 20, "", 0.0});
  const std::vector<Segment> a = assign_positions(segs);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].position, 1.0 - a[a.size() - 1 - i].position, 1e-12);
  }
}

TEST(SplitWords, WhitespaceOnly) {
  EXPECT_EQ(split_words("  a  b\tc\n"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_words("   ").empty());
}

}  // namespace
}  // namespace arcs
