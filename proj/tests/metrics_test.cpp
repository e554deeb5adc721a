#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "netir/error.hpp"
#include "netir/metrics.hpp"

namespace netir {
namespace {

const std::vector<std::string> kRanking{"r1", "n1", "r2"};
const std::set<std::string> kRelevant{"r1", "r2"};

TEST(Metrics, AveragePrecision) {
  // (1/1 + 2/3) / 2
  EXPECT_DOUBLE_EQ(average_precision(kRanking, kRelevant), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(average_precision(kRanking, {"r1", "missing"}), 0.5);
  EXPECT_EQ(average_precision(kRanking, {}), 0.0);
  EXPECT_EQ(average_precision({}, kRelevant), 0.0);
}

TEST(Metrics, PrecisionAndRecall) {
  EXPECT_EQ(precision_at(kRanking, kRelevant, 1), 1.0);
  EXPECT_DOUBLE_EQ(precision_at(kRanking, kRelevant, 3), 2.0 / 3.0);
  // Missing ranks count as non-relevant.
  EXPECT_DOUBLE_EQ(precision_at(kRanking, kRelevant, 10), 0.2);
  EXPECT_DOUBLE_EQ(recall_at(kRanking, kRelevant, 1), 0.5);
  EXPECT_EQ(recall_at(kRanking, kRelevant, 3), 1.0);
  EXPECT_EQ(recall_at(kRanking, {}, 3), 0.0);
  EXPECT_THROW((void)precision_at(kRanking, kRelevant, 0), Error);
}

TEST(Metrics, ParseQrels) {
  std::istringstream in("q1\td1\t1\nq1\td2\t0\n\nq2\td3\t1\n");
  const auto qrels = parse_qrels(in);
  ASSERT_EQ(qrels.size(), 2U);
  EXPECT_EQ(qrels.at("q1").at("d1"), 1);
  EXPECT_EQ(qrels.at("q1").at("d2"), 0);
  std::istringstream bad_rel("q1\td1\t2\n");
  EXPECT_THROW((void)parse_qrels(bad_rel), Error);
  std::istringstream short_line("q1\td1\n");
  EXPECT_THROW((void)parse_qrels(short_line), Error);
}

TEST(Metrics, ParseRun) {
  std::istringstream in(
      R"({"qid":"q1","rank":2,"doc":"b","score":0.5,"model":"bnr"})"
      "\n"
      R"({"qid":"q1","rank":1,"doc":"a","score":0.7,"model":"bnr"})"
      "\n"
      R"({"qid":"q2","model":"bnr","error":"EmptyQuery","results":0})"
      "\n");
  const auto run = parse_run(in);
  EXPECT_EQ(run.at("q1"), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(run.at("q2").empty());
  std::istringstream bad("not json\n");
  EXPECT_THROW((void)parse_run(bad), Error);
}

TEST(Metrics, EvaluateAndFormat) {
  const netir::Run run{{"q1", kRanking}, {"q2", {"x"}}, {"q3", {}}};
  const Qrels qrels{{"q1", {{"r1", 1}, {"r2", 1}, {"n1", 0}}}, {"q2", {{"x", 0}}}, {"q3", {{"y", 1}}}};
  const std::vector<std::size_t> cutoffs{1, 3};
  const auto report = evaluate(run, qrels, cutoffs);
  EXPECT_EQ(report.evaluated, 2U);  // q2 has no relevant document
  EXPECT_DOUBLE_EQ(report.mean_average_precision, (5.0 / 6.0 + 0.0) / 2.0);
  EXPECT_FALSE(report.warnings.empty());
  for (const auto& q : report.queries) {
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
      const double hits = q.precision[i] * static_cast<double>(cutoffs[i]);
      EXPECT_DOUBLE_EQ(hits, std::round(hits));
    }
  }
  const auto tsv = format_eval_tsv(report);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')), "qid\tP@1\tP@3\tR@1\tR@3\tAP");
  EXPECT_NE(tsv.find("q1\t1.0000\t0.6667\t0.5000\t1.0000\t0.8333"), std::string::npos);
  EXPECT_NE(tsv.find("\nall\t"), std::string::npos);
}

TEST(Metrics, EmptyRunWarns) {
  const Qrels qrels{{"q1", {{"d", 1}}}};
  const auto report = evaluate({}, qrels, std::vector<std::size_t>{5});
  EXPECT_EQ(report.mean_average_precision, 0.0);
  EXPECT_FALSE(report.warnings.empty());
}

}  // namespace
}  // namespace netir
