// Copyright 2026 The nwa Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "common/error.hpp"
#include "evaluation/report.hpp"

namespace nwa::evaluation {
namespace {

std::size_t line_count(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

ReportRow row(Scenario s, DataKind kind, ModelId model, double acc) {
  ReportRow r;
  r.spec = make_scenario(s, kind, model, stream::DatasetKind::kSynthetic);
  auto& m = r.metrics;
  m.n_classes = 3;
  m.accuracy = acc;
  m.precision_macro = 0.5;
  m.precision = {0.25, 0.5, 0.75};
  m.recall_macro = 0.125;
  m.recall = {0.0, 0.125, 0.25};
  m.crloss = 0.693147;
  m.rmse = 0.1;
  m.mae = 0.01;
  m.preq_time_s = 12.5;
  return r;
}

TEST(ReportTest, ColumnsNamePerClassCells) {
  const auto cols = report_columns(2);
  const std::vector<std::string> expected = {"data",     "scenario",     "model",        "accuracy",
                                             "precision_macro", "precision_c0", "precision_c1",
                                             "recall_macro",    "recall_c0",    "recall_c1",
                                             "crloss",   "rmse",         "mae",          "preq_time_s"};
  EXPECT_EQ(cols, expected);
}

TEST(ReportTest, EmptyReportIsHeaderOnly) {
  const auto csv = report_csv({});
  EXPECT_EQ(line_count(csv), 1u);
  EXPECT_TRUE(parse_report_csv(csv).empty());
}

TEST(ReportTest, CsvRoundTrip) {
  const std::vector<ReportRow> rows = {row(Scenario::kA, DataKind::kRaw, ModelId::kGnb, 0.9),
                                       row(Scenario::kD, DataKind::kEngineered, ModelId::kKMeans, 0.975)};
  const auto csv = report_csv(rows, {.include_timing = true});
  EXPECT_EQ(line_count(csv), 3u);
  const auto back = parse_report_csv(csv);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].spec.id, rows[i].spec.id);
    EXPECT_EQ(back[i].spec.kind, rows[i].spec.kind);
    EXPECT_EQ(back[i].spec.model, rows[i].spec.model);
    EXPECT_DOUBLE_EQ(back[i].metrics.accuracy, rows[i].metrics.accuracy);
    EXPECT_EQ(back[i].metrics.precision, rows[i].metrics.precision);
    EXPECT_EQ(back[i].metrics.recall, rows[i].metrics.recall);
    EXPECT_DOUBLE_EQ(back[i].metrics.preq_time_s, 12.5);
  }
  EXPECT_NE(csv.find("engineered,D,kmeans,0.975000"), std::string::npos);
}

TEST(ReportTest, TimingIsOptIn) {
  const auto csv = report_csv({row(Scenario::kA, DataKind::kRaw, ModelId::kGnb, 0.9)});
  EXPECT_NE(csv.find(",0.693147,0.100000,0.010000,\n"), std::string::npos);
}

TEST(ReportTest, RejectsForeignHeader) {
  EXPECT_THROW(parse_report_csv("a,b,c\n"), Error);
  EXPECT_THROW(parse_report_csv(""), Error);
}

TEST(ReportTest, TextShowsClusteringAndSpread) {
  auto d = row(Scenario::kD, DataKind::kEngineered, ModelId::kKMeans, 0.9768);
  d.metrics.sessions = 5;
  d.metrics.accuracy_std = 0.0083;
  const auto text = report_text({d});
  EXPECT_NE(text.find("Clustering"), std::string::npos);
  EXPECT_NE(text.find("97.68 ± 0.83"), std::string::npos);
  EXPECT_EQ(line_count(text), 3u);
}

TEST(ReportTest, PredictionLogLayout) {
  PredictionRecord a;
  a.n = 10;
  a.truth = 0;
  a.pred = 2;
  a.proba = {0.25, 0.25, 0.5};
  a.cluster = 1;
  a.bootstrap = true;
  PredictionRecord b;
  b.n = 20;
  b.pred = 1;
  b.proba = {0.0, 1.0, 0.0};
  b.cluster = 0;
  EXPECT_EQ(prediction_log_csv({a, b}, 3, false),
            "n,truth,pred,p(c0),p(c1),p(c2)\n"
            "10,c0,c2,0.250000,0.250000,0.500000\n"
            "20,,c1,0.000000,1.000000,0.000000\n");
  EXPECT_EQ(prediction_log_csv({a}, 3, true),
            "n,truth,pred,p(c0),p(c1),p(c2),cluster,bootstrap\n"
            "10,c0,c2,0.250000,0.250000,0.500000,1,1\n");
}

}  // namespace
}  // namespace nwa::evaluation
