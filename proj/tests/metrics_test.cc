// Copyright 2026 The pstkit Authors
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

#include "pstkit/metrics.hpp"

#include <gtest/gtest.h>

#include <array>

#include "pstkit/error.hpp"

namespace pstkit {
namespace {

TEST(MetricsTest, PublishedTableTriples) {
  struct Row {
    std::size_t in, gen;
    const char* percent;
  };
  for (const auto& r : {Row{171, 283, "39.6"}, Row{100, 283, "64.7"},
                        Row{138, 360, "61.7"}, Row{175, 343, "49.0"},
                        Row{178, 525, "66.1"}}) {
    EXPECT_EQ(format_percent(reduction(r.in, r.gen)), r.percent)
        << r.in << "/" << r.gen;
  }
}

TEST(MetricsTest, Monotone) {
  for (std::size_t gen = 1; gen < 60; ++gen) {
    for (std::size_t in = 0; in < 80; ++in) {
      EXPECT_GT(reduction(in, gen), reduction(in + 1, gen));
      // With no input the reduction is 100 % for every output size.
      if (in > 0) EXPECT_LT(reduction(in, gen), reduction(in, gen + 1));
    }
  }
  EXPECT_DOUBLE_EQ(reduction(0, 5), 100.0);
  EXPECT_DOUBLE_EQ(reduction(10, 5), -100.0);
}

TEST(MetricsTest, ZeroGenerated) {
  try {
    reduction(3, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroGenerated);
  }
}

TEST(MetricsTest, CountsSkipBlankDirectiveAndHeaderLines) {
  const std::array<CommentStyle, 1> c = {CommentStyle::c()};
  const auto tpl = parse_template(
      "/* header */\n//_connector:a\nx = 1;\n\n   \n  //_link:l\ny = 2;\n"
      "//_connector:b\nz = 3;\n",
      "t.c", c);
  EXPECT_EQ(count_template_lines(tpl), 3u);
  const std::array<Template, 2> both = {tpl, tpl};
  EXPECT_EQ(count_template_lines(both), 6u);
  EXPECT_EQ(count_generated_lines("a\n\n  \nb\n\tc"), 3u);
  EXPECT_EQ(count_generated_lines(""), 0u);
}

TEST(MetricsTest, TableIsAligned) {
  const std::array<ReductionReport, 2> rows = {
      make_report("omp_incr1", 171, 283), make_report("total", 100, 283)};
  EXPECT_DOUBLE_EQ(rows[1].reduction, reduction(100, 283));
  const auto table = format_table(rows);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < table.size()) {
    const auto nl = table.find('\n', start);
    lines.push_back(table.substr(start, nl - start));
    start = nl == std::string::npos ? table.size() : nl + 1;
  }
  ASSERT_EQ(lines.size(), 3u) << table;
  EXPECT_EQ(lines[0].rfind("variant set", 0), 0u);
  EXPECT_NE(lines[1].find("39.6"), std::string::npos);
  EXPECT_NE(lines[2].find("64.7"), std::string::npos);
  EXPECT_EQ(lines[1].size(), lines[2].size());
  EXPECT_EQ(lines[0].size(), lines[1].size());
}

}  // namespace
}  // namespace pstkit
