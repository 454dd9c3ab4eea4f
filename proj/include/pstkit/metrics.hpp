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

// Code-reduction metrics.
//
// Input lines are the non-blank code lines of a template set; directive
// lines and header lines before the first connector are not counted.
// Generated lines are the non-blank lines of rendered output.

#ifndef PSTKIT_METRICS_HPP_
#define PSTKIT_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pstkit/template.hpp"

namespace pstkit {

std::size_t count_template_lines(const Template& tpl);
std::size_t count_template_lines(std::span<const Template> templates);
std::size_t count_generated_lines(std::string_view text);

// 100 * (1 - input / generated). Throws ZeroGenerated.
double reduction(std::size_t input_lines, std::size_t generated_lines);

// One decimal place, e.g. "39.6".
std::string format_percent(double percent);

struct ReductionReport {
  std::string label;
  std::size_t input_lines = 0;
  std::size_t generated_lines = 0;
  double reduction = 0.0;  // percent
};

ReductionReport make_report(std::string label, std::size_t input_lines,
                            std::size_t generated_lines);

// Aligned table: label, input, generated, reduction.
std::string format_table(std::span<const ReductionReport> rows);

}  // namespace pstkit

#endif  // PSTKIT_METRICS_HPP_
