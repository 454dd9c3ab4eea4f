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

#include "pstkit/template.hpp"

#include <gtest/gtest.h>

#include <array>

#include "pstkit/error.hpp"
#include "pstkit/metrics.hpp"
#include "support.hpp"

namespace pstkit {
namespace {

const std::array<CommentStyle, 1> kC = {CommentStyle::c()};
const std::array<CommentStyle, 1> kFortran = {CommentStyle::fortran()};

Errc parse_error(std::string_view text,
                 std::span<const CommentStyle> styles = kC) {
  try {
    parse_template(text, "t.c", styles);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return Errc::Io;
}

TEST(ScanLineTest, ClassifiesDirectivesAndCode) {
  const auto link = std::get<Directive>(scan_line("    //_link:kernel", kC));
  EXPECT_EQ(link.kind, DirectiveKind::Link);
  EXPECT_EQ(link.id_or_name, "kernel");
  EXPECT_EQ(link.leading_ws, "    ");

  const auto param = std::get<Directive>(scan_line("//_param:x_i = x[i]", kC));
  EXPECT_EQ(param.kind, DirectiveKind::Param);
  EXPECT_EQ(param.id_or_name, "x_i");
  EXPECT_EQ(*param.value, "x[i]");

  EXPECT_TRUE(std::holds_alternative<CodeLine>(scan_line("y[i] += 1;", kC)));
  // A space between comment token and directive makes it a plain comment.
  EXPECT_TRUE(std::holds_alternative<CodeLine>(scan_line("// _link:k", kC)));
  // Directives must own their line.
  EXPECT_TRUE(std::holds_alternative<CodeLine>(scan_line("x; //_link:k", kC)));
  // Fortran token under C style is plain text, and vice versa.
  EXPECT_TRUE(std::holds_alternative<CodeLine>(scan_line("!_link:k", kC)));
  EXPECT_TRUE(
      std::holds_alternative<Directive>(scan_line("  !_link:k", kFortran)));
}

TEST(ScanLineTest, ParamValueKeepsInnerEqualsAndSpaces) {
  const auto d =
      std::get<Directive>(scan_line("//_param:cond = a == b && c", kC));
  EXPECT_EQ(*d.value, "a == b && c");
  const auto empty = std::get<Directive>(scan_line("//_param:e =", kC));
  EXPECT_EQ(*empty.value, "");
}

TEST(ScanLineTest, Errors) {
  auto code = [](std::string_view line) {
    try {
      scan_line(line, kC, 7, "f.c");
    } catch (const Error& e) {
      EXPECT_EQ(e.location(), "f.c:7");
      return e.code();
    }
    return Errc::Io;
  };
  EXPECT_EQ(code("//_param:a a"), Errc::ParamMissingEquals);
  EXPECT_EQ(code("//_param:__file__ = x"), Errc::ReservedParam);
  EXPECT_EQ(code("//_param:__indent__ = 3"), Errc::ReservedParam);
  EXPECT_EQ(code("//_link:9lives"), Errc::MalformedDirective);
  EXPECT_EQ(code("//_connector:"), Errc::MalformedDirective);
  EXPECT_EQ(code("//_param:a-b = 1"), Errc::MalformedDirective);
}

TEST(CommentStyleTest, FromFlagAndExtensions) {
  EXPECT_EQ(CommentStyle::from_flag("c").line_token, "//");
  EXPECT_EQ(CommentStyle::from_flag("fortran").line_token, "!");
  EXPECT_EQ(CommentStyle::from_flag("#").line_token, "#");
  EXPECT_THROW(CommentStyle::from_flag("a b"), Error);
  EXPECT_THROW(CommentStyle::from_flag(""), Error);
  EXPECT_EQ(styles_for_path("x.cu"), std::vector{CommentStyle::c()});
  EXPECT_EQ(styles_for_path("x.F90"), std::vector{CommentStyle::fortran()});
  EXPECT_EQ(styles_for_path("x.tpl").size(), 2u);
}

TEST(ParseTemplateTest, ListingTwoStructure) {
  const auto tpl = load_template(testing::fixture("listings/function.c"));
  EXPECT_EQ(tpl.source_name, "function.c");
  ASSERT_EQ(tpl.sections.size(), 1u);
  const auto& s = tpl.sections[0];
  EXPECT_EQ(s.id, "function");
  EXPECT_EQ(s.params, (std::vector<Param>{
                          {"a", "a"}, {"x_i", "x[i]"}, {"y_i", "y[i]"}}));
  ASSERT_EQ(s.link_count(), 1u);
  EXPECT_EQ(s.links()[0]->id, "kernel");
  EXPECT_EQ(s.links()[0]->leading_ws, "    ");
  EXPECT_EQ(tpl.header, std::vector<std::string>{"/* file `function.c` */"});
}

TEST(ParseTemplateTest, CodeLineCounts) {
  // Hand count: signature, for, and the two closing braces.
  EXPECT_EQ(count_template_lines(
                load_template(testing::fixture("listings/function.c"))),
            4u);
  EXPECT_EQ(count_template_lines(
                load_template(testing::fixture("listings/kernel.c"))),
            1u);
}

TEST(ParseTemplateTest, SectionsSplitAtConnectors) {
  const auto tpl = parse_template(
      "//_connector:a\nx\n//_connector:b\n\ny\n//_link:l\n", "t.c", kC);
  ASSERT_EQ(tpl.sections.size(), 2u);
  EXPECT_EQ(tpl.sections[0].body.size(), 1u);
  EXPECT_EQ(tpl.sections[1].body.size(), 3u);
  EXPECT_EQ(tpl.find("b"), &tpl.sections[1]);
  EXPECT_EQ(tpl.find("c"), nullptr);
}

TEST(ParseTemplateTest, HeaderAcceptsCommentsAndBlocks) {
  const auto tpl = parse_template(
      "/* multi\n   line */\n\n// note\n//_connector:a\nx\n", "t.c", kC);
  EXPECT_EQ(tpl.header.size(), 4u);
  const auto f = parse_template("!! note\n!_connector:a\nx\n", "t.f90",
                                kFortran);
  EXPECT_EQ(f.header.size(), 1u);
}

TEST(ParseTemplateTest, Errors) {
  EXPECT_EQ(parse_error("int x;\n"), Errc::NoConnector);
  EXPECT_EQ(parse_error(""), Errc::NoConnector);
  EXPECT_EQ(parse_error("int x;\n//_connector:a\n"), Errc::StrayCode);
  EXPECT_EQ(parse_error("//_link:l\n//_connector:a\n"), Errc::StrayDirective);
  EXPECT_EQ(parse_error("//_param:p = 1\n//_connector:a\n"),
            Errc::StrayDirective);
  EXPECT_EQ(parse_error("//_connector:a\n//_connector:a\n"),
            Errc::DuplicateConnector);
  EXPECT_EQ(parse_error("//_connector:a\n//_param:p = 1\n//_param:p = 2\n"),
            Errc::DuplicateParam);
}

TEST(ParseTemplateTest, ErrorLocationNamesFileAndLine) {
  try {
    parse_template("//_connector:a\nx\n//_param:q\n", "dir/t.c", kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.location(), "dir/t.c:3");
    EXPECT_NE(std::string(e.what()).find("ParamMissingEquals"),
              std::string::npos);
  }
}

TEST(ParseTemplateTest, CarriageReturnsAreStripped) {
  const auto tpl = parse_template("//_connector:a\r\nx;\r\n", "t.c", kC);
  EXPECT_EQ(std::get<CodeLine>(tpl.sections[0].body[0]).text, "x;");
}

TEST(ReconstructTest, RoundTripsSectionText) {
  const std::string text =
      "//_connector:a\n"
      "int f() {\n"
      "  //_param:p = 1\n"
      "  //_link:l\n"
      "\n"
      "}\n"
      "//_connector:b\n"
      "  !weird\n";
  EXPECT_EQ(reconstruct(parse_template(text, "t.c", kC)), text);
}

TEST(LoadTemplateTest, MissingFileIsIo) {
  try {
    load_template("/nonexistent/x.c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Io);
  }
}

}  // namespace
}  // namespace pstkit
