//
// Copyright 2026 The sgm-rdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sgm_rdp/sweep.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace sgm_rdp {
namespace {

std::string Csv(const SweepSpec& spec) {
  std::ostringstream out;
  WriteSweepCsv(out, *RunSweep(spec));
  return out.str();
}

std::vector<double> GeometricOrders(double lo, double hi, double ratio) {
  std::vector<double> orders;
  for (double a = lo; a <= hi; a *= ratio) orders.push_back(a);
  return orders;
}

TEST(SweepTest, SinglePoint) {
  const std::string csv = Csv({{0.01}, {1.0}, {2.0}});
  std::istringstream in(csv);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, kSweepCsvHeader);
  EXPECT_EQ(row.substr(0, 9), "0.01,1,2,");
  // sigma < 4: no bound, empty field.
  EXPECT_NE(row.find(",,"), std::string::npos);
  std::string rest;
  EXPECT_FALSE(std::getline(in, rest));

  std::istringstream again(csv);
  std::vector<SweepRow> rows = *ReadSweepCsv(again);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].eps_exact, 1.71813e-4, 1e-9);
  EXPECT_FALSE(rows[0].eps_bound.has_value());
  EXPECT_FALSE(rows[0].cond_range);
}

TEST(SweepTest, RowOrder) {
  std::vector<SweepRow> rows = *RunSweep({{0.1, 0.01}, {4.0, 10.0}, {2, 3}});
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].q, 0.1);
  EXPECT_EQ(rows[0].sigma, 4.0);
  EXPECT_EQ(rows[1].alpha, 3.0);
  EXPECT_EQ(rows[2].sigma, 10.0);
  EXPECT_EQ(rows[4].q, 0.01);
  EXPECT_EQ(rows[7].alpha, 3.0);
}

TEST(SweepTest, BoundDominatesExact) {
  std::vector<SweepRow> rows = *RunSweep(
      {{0.2, 0.1, 0.05, 0.01}, {4.0, 10.0}, GeometricOrders(1.1, 200, 1.3)});
  int bounded = 0;
  for (const SweepRow& r : rows) {
    EXPECT_EQ(r.eps_bound.has_value(),
              r.cond_range && r.cond_alpha1 && r.cond_alpha2);
    if (!r.eps_bound) continue;
    ++bounded;
    EXPECT_GE(*r.eps_bound, r.eps_exact)
        << r.q << " " << r.sigma << " " << r.alpha;
  }
  EXPECT_GT(bounded, 10);
}

TEST(SweepTest, BitReproducible) {
  const SweepSpec spec{{0.3, 0.05}, {0.8, 4.0}, {1.5, 2, 7.25}};
  EXPECT_EQ(Csv(spec), Csv(spec));
}

TEST(SweepTest, CsvRoundTrip) {
  const SweepSpec spec{{0.2, 0.01}, {4.0}, {1.5, 2, 64}};
  const std::vector<SweepRow> rows = *RunSweep(spec);
  std::istringstream in(Csv(spec));
  const std::vector<SweepRow> back = *ReadSweepCsv(in);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].eps_exact, rows[i].eps_exact);
    EXPECT_EQ(back[i].eps_bound, rows[i].eps_bound);
    EXPECT_EQ(back[i].cond_alpha1, rows[i].cond_alpha1);
  }
}

TEST(SweepTest, MalformedCsv) {
  std::istringstream no_header("0.1,4,2,0.1,,true,true,true\n");
  EXPECT_FALSE(ReadSweepCsv(no_header).ok());
  std::istringstream short_row(std::string(kSweepCsvHeader) + "\n0.1,4\n");
  EXPECT_FALSE(ReadSweepCsv(short_row).ok());
  std::istringstream bad_flag(std::string(kSweepCsvHeader) +
                              "\n0.1,4,2,0.1,,yes,true,true\n");
  EXPECT_FALSE(ReadSweepCsv(bad_flag).ok());
}

TEST(SweepTest, RejectsInvalidSpecs) {
  EXPECT_FALSE(RunSweep({{}, {4.0}, {2.0}}).ok());
  EXPECT_FALSE(RunSweep({{0.1}, {4.0}, {1.0}}).ok());
  EXPECT_FALSE(RunSweep({{1.5}, {4.0}, {2.0}}).ok());
  EXPECT_FALSE(RunSweep({{0.1}, {0.0}, {2.0}}).ok());
}

TEST(SweepTest, MaxOrderShape) {
  // q descending: both maximal orders grow, and the condition-limited order
  // closes in on the exact one.
  const SweepSpec spec{{0.2, 0.1, 0.05, 0.02, 0.01, 0.005},
                       {4.0},
                       GeometricOrders(1.1, 1000, 1.02)};
  std::istringstream in(Csv(spec));
  const std::vector<MaxOrderSummary> summary =
      SummarizeMaxOrders(*ReadSweepCsv(in));
  ASSERT_EQ(summary.size(), 6u);
  for (std::size_t i = 1; i < summary.size(); ++i) {
    const MaxOrderSummary& prev = summary[i - 1];
    const MaxOrderSummary& cur = summary[i];
    EXPECT_GE(cur.max_alpha_conditions, prev.max_alpha_conditions);
    EXPECT_GE(cur.max_alpha_exact, prev.max_alpha_exact);
    EXPECT_LE(cur.max_alpha_conditions, cur.max_alpha_exact);
    EXPECT_GE(cur.max_alpha_conditions / cur.max_alpha_exact,
              prev.max_alpha_conditions / prev.max_alpha_exact);
  }
}

}  // namespace
}  // namespace sgm_rdp
