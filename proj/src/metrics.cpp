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

#include <algorithm>
#include <cstdio>
#include <variant>

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

std::string pad(std::string s, std::size_t width, bool right) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

}  // namespace

std::size_t count_template_lines(const Template& tpl) {
  std::size_t n = 0;
  for (const auto& section : tpl.sections) {
    for (const auto& item : section.body) {
      const auto* code = std::get_if<CodeLine>(&item);
      if (code != nullptr && !blank(code->text)) ++n;
    }
  }
  return n;
}

std::size_t count_template_lines(std::span<const Template> templates) {
  std::size_t n = 0;
  for (const auto& t : templates) n += count_template_lines(t);
  return n;
}

std::size_t count_generated_lines(std::string_view text) {
  std::size_t n = 0;
  for (const auto& line : split_lines(text)) {
    if (!blank(line)) ++n;
  }
  return n;
}

double reduction(std::size_t input_lines, std::size_t generated_lines) {
  if (generated_lines == 0) {
    throw Error(Errc::ZeroGenerated, "no generated lines to compare against");
  }
  return 100.0 * (1.0 - static_cast<double>(input_lines) /
                            static_cast<double>(generated_lines));
}

std::string format_percent(double percent) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", percent);
  return buf;
}

ReductionReport make_report(std::string label, std::size_t input_lines,
                            std::size_t generated_lines) {
  return {std::move(label), input_lines, generated_lines,
          reduction(input_lines, generated_lines)};
}

std::string format_table(std::span<const ReductionReport> rows) {
  const std::vector<std::string> head = {"variant set", "input", "generated",
                                         "reduction %"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.label, std::to_string(r.input_lines),
                     std::to_string(r.generated_lines),
                     format_percent(r.reduction)});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out = pad(row[0], width[0], false);
    for (std::size_t c = 1; c < row.size(); ++c) {
      out += "  " + pad(row[c], width[c], true);
    }
    return out + "\n";
  };
  std::string out = line(head);
  for (const auto& row : cells) out += line(row);
  return out;
}

}  // namespace pstkit
