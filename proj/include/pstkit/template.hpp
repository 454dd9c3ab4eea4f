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

// Annotated template files.
//
// A template is ordinary source text in which some line comments carry
// directives:
//
//   //_connector:ID      starts a connector section
//   //_link:ID           marks a slot where other connectors attach
//   //_param:NAME = V    defines a parameter for the enclosing connector
//
// The directive token must follow the comment token with no space in
// between, and the directive must be the only thing on its line. Every
// other line is passed through verbatim; the host language is never parsed.

#ifndef PSTKIT_TEMPLATE_HPP_
#define PSTKIT_TEMPLATE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pstkit {

inline constexpr std::string_view kFileParam = "__file__";
inline constexpr std::string_view kIndentParam = "__indent__";

bool is_identifier(std::string_view s) noexcept;
bool is_reserved_param(std::string_view name) noexcept;

struct CommentStyle {
  std::string name;
  std::string line_token;

  static CommentStyle c();
  static CommentStyle fortran();
  // Accepts "c", "fortran", or a literal comment token such as "#".
  static CommentStyle from_flag(std::string_view flag);

  bool operator==(const CommentStyle&) const = default;
};

// Defaults by extension: C-family sources use "//", Fortran sources use
// "!". Unknown extensions accept both.
std::vector<CommentStyle> styles_for_path(const std::filesystem::path& path);

struct Param {
  std::string name;
  std::string value;

  bool operator==(const Param&) const = default;
};

enum class DirectiveKind { Connector, Link, Param };

struct Directive {
  DirectiveKind kind = DirectiveKind::Connector;
  std::string id_or_name;
  std::optional<std::string> value;  // Param only
  std::string leading_ws;
  std::size_t source_line = 0;

  bool operator==(const Directive&) const = default;
};

struct CodeLine {
  std::string text;
  std::size_t source_line = 0;

  bool operator==(const CodeLine&) const = default;
};

using ScannedLine = std::variant<CodeLine, Directive>;

// Classifies one physical line (no trailing newline). `source_name` and
// `source_line` only feed diagnostics.
ScannedLine scan_line(std::string_view line,
                      std::span<const CommentStyle> styles,
                      std::size_t source_line = 0,
                      std::string_view source_name = {});

struct LinkSlot {
  std::string id;
  std::string leading_ws;
  std::string raw;
  std::size_t source_line = 0;

  bool operator==(const LinkSlot&) const = default;
};

// Keeps the position of a parameter directive inside a section body so the
// original text can be reconstructed. The binding itself lives in
// ConnectorSection::params.
struct ParamDecl {
  Param param;
  std::string raw;
  std::size_t source_line = 0;

  bool operator==(const ParamDecl&) const = default;
};

using BodyItem = std::variant<CodeLine, LinkSlot, ParamDecl>;

struct ConnectorSection {
  std::string id;
  std::string directive_line;
  std::size_t source_line = 0;
  std::vector<Param> params;
  std::vector<BodyItem> body;

  std::size_t link_count() const noexcept;
  std::vector<const LinkSlot*> links() const;

  bool operator==(const ConnectorSection&) const = default;
};

struct Template {
  std::string source_name;
  std::vector<std::string> header;  // ignored lines before the first connector
  std::vector<ConnectorSection> sections;

  const ConnectorSection* find(std::string_view connector_id) const noexcept;

  bool operator==(const Template&) const = default;
};

Template parse_template(std::string_view text, std::string source_name,
                        std::span<const CommentStyle> styles);

// Reads and parses a file. `__file__` becomes the file name without its
// directory. With no override the comment style follows the extension.
Template load_template(const std::filesystem::path& path,
                       const std::optional<CommentStyle>& style = std::nullopt);

// Source text rebuilt from sections (header lines are not included).
std::string reconstruct(const Template& tpl);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace pstkit

#endif  // PSTKIT_TEMPLATE_HPP_
