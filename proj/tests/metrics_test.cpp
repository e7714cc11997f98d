#include <string>

#include <gtest/gtest.h>

#include "street/metrics.hpp"
#include "support/test_support.hpp"

namespace street {
namespace {

using street_test::Fixture;
using street_test::ParseFixture;

const char* kFigureOneQuestion =
    "(1) Natalia sold clips to 48 of her friends in April, and then (2) she sold half as many "
    "clips in May. (3) How many clips did Natalia sell altogether in April and May?";
const char* kFigureOneProof =
    "(1) & (2) -> (4): Natalia sold 48/2 = 24 clips in May; (1) & (3) & (4) -> (5): Natalia sold "
    "48+24 = 72 clips altogether in April and May; (3) & (5) -> (6): The answer is 72;";

ReasoningGraph FigureOneGold() {
  return Parse({kFigureOneQuestion, kFigureOneProof, Task::kGsm8k}).value();
}

QuestionScore Score(const std::string& proof, const ReasoningGraph& gold) {
  return ScoreQuestion(proof, gold, SimilarityPolicy::ForTask(gold.task()));
}

TEST(AnswerAccuracyTest, TypedComparison) {
  EXPECT_TRUE(AnswerAccuracy(Choice{'A'}, Choice{'A'}).value());
  EXPECT_FALSE(AnswerAccuracy(Choice{'A'}, Choice{'B'}).value());
  EXPECT_TRUE(AnswerAccuracy(Number{*Decimal::Parse("12.0")}, Number{*Decimal::Parse("12")}).value());
  EXPECT_EQ(AnswerAccuracy(Choice{'A'}, Number{}).error().code, ErrorCode::kTypeMismatch);
}

TEST(GraphSimilarityTest, FigureOneWithChangedNumbers) {
  std::string proof = kFigureOneProof;
  proof.replace(proof.find("48/2 = 24"), 9, "48/3 = 16");
  const auto score = Score(proof, FigureOneGold());
  EXPECT_TRUE(score.answer_correct);
  EXPECT_FALSE(score.graph_accurate);
  EXPECT_DOUBLE_EQ(score.graph_similarity, 1.0 - 1.0 / 13.0);
  EXPECT_TRUE(score.ged_exact);
}

TEST(GraphSimilarityTest, WrongAnswerScoresZero) {
  std::string proof = kFigureOneProof;
  proof.replace(proof.find("answer is 72"), 12, "answer is 71");
  const auto score = Score(proof, FigureOneGold());
  EXPECT_FALSE(score.answer_correct);
  EXPECT_FALSE(score.graph_accurate);
  EXPECT_EQ(score.graph_similarity, 0.0);
  EXPECT_EQ(GraphSimilarity(Parse({kFigureOneQuestion, proof, Task::kGsm8k}).value(),
                            FigureOneGold(), SimilarityPolicy::Math()),
            0.0);
}

TEST(GraphSimilarityTest, GoldAgainstItselfIsPerfect) {
  for (const auto& f : street_test::LoadFixtureTexts()) {
    const auto score = Score(f.proof, ParseFixture(f.id));
    EXPECT_TRUE(score.answer_correct) << f.id;
    EXPECT_TRUE(score.graph_accurate) << f.id;
    EXPECT_EQ(score.graph_similarity, 1.0) << f.id;
    EXPECT_FALSE(score.malformed);
  }
}

TEST(GraphSimilarityTest, SimilarityFromGedEdges) {
  GedOutcome g;
  g.delta = EditCost::Infinite();
  EXPECT_EQ(SimilarityFromGed(g), 0.0);
  g.delta = EditCost(0);
  EXPECT_EQ(SimilarityFromGed(g), 1.0);
  g.delta = EditCost(3);
  g.norm_terms = {10, 12};
  EXPECT_DOUBLE_EQ(SimilarityFromGed(g), 0.75);
  g.delta = EditCost(40);
  EXPECT_EQ(SimilarityFromGed(g), 0.0);
}

TEST(ScoreQuestionTest, MalformedOutputScoresZero) {
  const auto score = Score("the answer is obviously 12", ParseFixture("fixture-gsm8k"));
  EXPECT_TRUE(score.malformed);
  EXPECT_FALSE(score.answer_correct);
  EXPECT_FALSE(score.graph_accurate);
  EXPECT_EQ(score.graph_similarity, 0.0);
  ASSERT_TRUE(score.error.has_value());
}

TEST(ScoreQuestionTest, TruncatedOutputIsFlagged) {
  const std::string proof = Fixture("fixture-gsm8k").proof;
  const auto score = Score(proof.substr(0, proof.find("(4) & (8)") + 6), ParseFixture("fixture-gsm8k"));
  EXPECT_TRUE(score.truncated);
  EXPECT_FALSE(score.malformed);
  EXPECT_FALSE(score.answer_correct);
}

TEST(AlignmentTest, IdentityOnGold) {
  const auto gold = ParseFixture("fixture-gsm8k");
  const auto alignment = AlignNodes(gold, gold, SimilarityPolicy::Math());
  ASSERT_EQ(alignment.size(), 5u);
  for (const auto& [p, g] : alignment) EXPECT_EQ(p, g);
}

TEST(AlignmentTest, TextMismatchStopsDownstreamAnchors) {
  std::string proof = kFigureOneProof;
  proof.replace(proof.find("48/2 = 24"), 9, "48/3 = 16");
  const auto pred = Parse({kFigureOneQuestion, proof, Task::kGsm8k}).value();
  const auto alignment = AlignNodes(pred, FigureOneGold(), SimilarityPolicy::Math());
  EXPECT_FALSE(alignment.count(NodeId(4)));
  EXPECT_FALSE(alignment.count(NodeId(5)));
  EXPECT_FALSE(ReasoningGraphAccuracy(pred, FigureOneGold(), SimilarityPolicy::Math()));
}

TEST(AlignmentTest, ReorderedIndependentStepsStillAlign) {
  const auto gold = ParseFixture("fixture-tangrams");
  const std::string proof =
      "(5) & (6) -> (11): position 5 has figure A; (1) & (6) -> (12): position 1 has figure B; "
      "(12) & (7) -> (13): position 1 has figure E; (3) & (7) -> (14): position 3 has figure B; "
      "(13) & (8) -> (15): position 1 has figure B; (14) & (8) -> (16): position 3 has figure E; "
      "(11) & (9) -> (17): position 5 has no figure; (17) & (10) -> (18): position 5 has figure A;";
  const auto pred = ParseModelOutput(proof, gold).value().graph;
  const auto alignment = AlignNodes(pred, gold, SimilarityPolicy::Exact());
  EXPECT_EQ(alignment.size(), 8u);
  EXPECT_EQ(alignment.at(NodeId(11)), NodeId(12));
  EXPECT_EQ(alignment.at(NodeId(12)), NodeId(11));
  const auto score = Score(proof, gold);
  EXPECT_TRUE(score.graph_accurate);
  EXPECT_EQ(score.graph_similarity, 1.0);
}

TEST(AlignmentTest, ExtraPremiseBreaksStrictAccuracy) {
  const auto gold = ParseFixture("fixture-gsm8k");
  std::string proof = Fixture("fixture-gsm8k").proof;
  proof.replace(proof.find("(7) -> (8)"), 10, "(1) & (7) -> (8)");
  const auto score = Score(proof, gold);
  EXPECT_TRUE(score.answer_correct);
  EXPECT_FALSE(score.graph_accurate);
  EXPECT_GT(score.graph_similarity, 0.0);
  EXPECT_LT(score.graph_similarity, 1.0);
}

TEST(AlignmentTest, PremiseOrderDoesNotMatter) {
  const auto gold = ParseFixture("fixture-alchemy");
  std::string proof = Fixture("fixture-alchemy").proof;
  proof.replace(proof.find("(2) & (7) & (9)"), 15, "(9) & (7) & (2)");
  proof.replace(proof.find("(16) & (11) & (5)"), 17, "(5) & (16) & (11)");
  const auto score = Score(proof, gold);
  EXPECT_TRUE(score.graph_accurate);
  EXPECT_EQ(score.graph_similarity, 1.0);
}

TEST(ScoreQuestionTest, ForwardReferenceIsMalformed) {
  const auto gold = ParseFixture("fixture-gsm8k");
  const std::string proof =
      "(4) & (5) -> (6): Adam and Tom need a total of 44 - 20 = 24 more years to be 44 years old "
      "together.; (2) & (3) -> (5): bogus;";
  EXPECT_FALSE(ParseModelOutput(proof, gold).ok());
}

TEST(DegradationTest, MoreEditsNeverScoreHigher) {
  const auto gold = ParseFixture("fixture-gsm8k");
  std::string proof = Fixture("fixture-gsm8k").proof;
  double last = Score(proof, gold).graph_similarity;
  for (const auto& [from, to] : std::vector<std::pair<std::string, std::string>>{
           {"8 + 12 = 20", "8 + 13 = 21"}, {"1 * 2 = 2", "1 * 3 = 3"}, {"44 - 20 = 24", "44 - 21 = 23"},
           {"24 / 2 = 12", "23 / 3 = 7"}}) {
    proof.replace(proof.find(from), from.size(), to);
    const double now = Score(proof, gold).graph_similarity;
    EXPECT_LT(now, last) << proof;
    last = now;
  }
}

TEST(AggregateTest, TwoQuestionsOneRight) {
  QuestionScore right;
  right.task = Task::kGsm8k;
  right.answer_correct = right.graph_accurate = true;
  right.graph_similarity = 1.0;
  QuestionScore wrong;
  wrong.task = Task::kGsm8k;
  const auto report = Aggregate({right, wrong}, "test");
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].task, "GSM8K");
  EXPECT_EQ(report.rows[0].count, 2u);
  EXPECT_DOUBLE_EQ(report.rows[0].answer_accuracy, 50.0);
  EXPECT_DOUBLE_EQ(report.rows[0].reasoning_graph_accuracy, 50.0);
  EXPECT_DOUBLE_EQ(report.rows[0].graph_similarity, 50.0);
}

TEST(AggregateTest, RowOrderAndSconeGrouping) {
  std::vector<QuestionScore> scores(4);
  scores[0].task = Task::kArLsat;
  scores[1].task = Task::kSconeTangrams;
  scores[2].task = Task::kSconeAlchemy;
  scores[3].task = Task::kArc;
  const auto report = Aggregate(scores);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_EQ(report.rows[0].task, "ARC");
  EXPECT_EQ(report.rows[1].task, "SCONE");
  EXPECT_EQ(report.rows[1].count, 2u);
  EXPECT_EQ(report.rows[2].task, "AR-LSAT");
  EXPECT_TRUE(Aggregate({}).rows.empty());
}

TEST(AggregateTest, TableLayout) {
  QuestionScore s;
  s.task = Task::kArc;
  s.answer_correct = true;
  s.graph_similarity = 0.5;
  const std::string table = FormatTable(Aggregate({s}, "builtin-overlap"));
  EXPECT_EQ(table,
            "Task        Answer Acc.   Graph Acc.   Graph Sim.        N\n"
            "ARC               100.0          0.0         50.0        1\n"
            "scorer: builtin-overlap\n");
}

TEST(ToJsonTest, QuestionScoreFields) {
  QuestionScore s;
  s.id = "q1";
  s.task = Task::kAquaRat;
  s.alignment = {{NodeId(9), NodeId(10)}};
  const auto j = ToJson(s);
  EXPECT_EQ(j["id"], "q1");
  EXPECT_EQ(j["task"], "AQUA-RAT");
  EXPECT_EQ(j["alignment"].dump(), "[[9,10]]");
  EXPECT_FALSE(j.contains("error"));
}

}  // namespace
}  // namespace street
