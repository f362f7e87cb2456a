#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "arcs/csv.hpp"
#include "arcs/error.hpp"
#include "arcs/io.hpp"
#include "test_support.hpp"

namespace arcs {
namespace {

namespace fs = std::filesystem;

TEST(Numbers, Format) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
}

TEST(Csv, Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_row({"a", "b,c", ""}), "a,\"b,c\",\n");
}

TEST(Files, AtomicWriteAndMissingRead) {
  testing::TempDir dir("io");
  const fs::path p = dir.path() / "nested" / "out.txt";
  write_file_atomic(p, "hello\n");
  EXPECT_EQ(read_file(p), "hello\n");
  write_file_atomic(p, "again");
  EXPECT_EQ(read_file(p), "again");
  for (const auto& e : fs::directory_iterator(p.parent_path())) {
    EXPECT_EQ(e.path().filename(), "out.txt");
  }
  try {
    read_file(dir.path() / "absent.jsonl");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("absent.jsonl"), std::string::npos);
  }
}

TEST(Files, LockIsExclusive) {
  testing::TempDir dir("lock");
  const fs::path target = dir.path() / "labels.jsonl";
  {
    FileLock lock(target);
    EXPECT_TRUE(fs::exists(lock.path()));
    EXPECT_THROW(FileLock{target}, InputError);
  }
  EXPECT_FALSE(fs::exists(target.string() + ".lock"));
  EXPECT_NO_THROW(FileLock{target});
}

TEST(Jsonl, TranscriptsAndSegmentsRoundTrip) {
  Transcript t{"T1", {{Speaker::Interviewer, "Where were you born?"}, {Speaker::Subject, "In \"Lodz\", 1930."}},
               {{"lang", "en"}}};
  const std::vector<Transcript> ts{t};
  EXPECT_EQ(transcripts_from_jsonl(transcripts_to_jsonl(ts)), ts);
  const auto segs = segment(t).segments;
  EXPECT_EQ(segments_from_jsonl(segments_to_jsonl(segs)), segs);
}

TEST(Jsonl, LabelsRoundTrip) {
  StoredLabel a{"T1", 3, {}};
  a.label.practice = Polarity::Plus;
  a.label.belief = Polarity::Other;
  a.label.source = {LabelSource::Kind::Endpoint, "model-x", "belief-zero+practice-zero"};
  a.label.belief_votes = VoteTally{{{Polarity::Plus, 2}, {Polarity::Minus, 2}}, 1};
  a.label.practice_votes = VoteTally{{{Polarity::Plus, 5}}, 0};
  StoredLabel b{"T2", 0, {}};
  const std::vector<StoredLabel> ls{a, b};
  EXPECT_EQ(labels_from_jsonl(labels_to_jsonl(ls)), ls);
}

TEST(Jsonl, TrajectoriesIndexReferencesPeriods) {
  std::mt19937_64 rng(1);
  std::vector<Trajectory> ts{testing::random_trajectory(rng, 0, 5, "a"),
                             testing::random_trajectory(rng, 1, 5, "b", Aspect::Practice)};
  EXPECT_EQ(trajectories_from_jsonl(trajectories_to_jsonl(ts)), ts);
  const std::vector<IndexEntry> idx{{"T1", 0.25, "Kaddish"}, {"T2", 0.75, "ghettos"}};
  EXPECT_EQ(index_from_jsonl(index_to_jsonl(idx)), idx);
  const std::vector<ReferenceTrajectory> refs{{"T1", ReferenceClass::PMinus, {0.1, 0.2}}};
  EXPECT_EQ(references_from_jsonl(references_to_jsonl(refs)), refs);
  const std::vector<PeriodTag> tags{{0.1, Period::Before}, {0.9, Period::Reflection}};
  const auto back = period_tags_from_jsonl(period_tags_to_jsonl(tags));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].period, Period::Reflection);
  EXPECT_EQ(back[0].position, 0.1);
}

TEST(Jsonl, AnnotationsAndAdjudications) {
  const std::vector<AnnotationRecord> recs{{"i1", "ann1", AnnotationTask::Belief, "Positive"},
                                           {"i1", "ann2", AnnotationTask::Belief, "Negative"}};
  EXPECT_EQ(annotations_from_jsonl(annotations_to_jsonl(recs)), recs);
  const auto items = adjudicate_all(recs);
  const auto back = adjudications_from_jsonl(adjudications_to_jsonl(items));
  ASSERT_EQ(back.size(), 1u);
  EXPECT_TRUE(back[0].result.discarded());
  EXPECT_EQ(back[0].result.annotators, 2u);
  EXPECT_NE(adjudications_to_jsonl(items).find("\"status\":\"discarded\""), std::string::npos);
}

TEST(Jsonl, ErrorsCarryLineNumbers) {
  const std::string text = "{\"testimony_id\":\"T\",\"position\":0.1,\"term_id\":\"x\"}\n\n{bad\n";
  try {
    index_from_jsonl(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(trajectories_from_jsonl("{\"testimony_id\":\"a\",\"aspect\":\"belief\",\"points\":[{\"position\":0.1,"
                                       "\"value\":7}]}\n"),
               ParseError);
  EXPECT_TRUE(index_from_jsonl("").empty());
}

}  // namespace
}  // namespace arcs
