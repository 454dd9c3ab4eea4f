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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

constexpr std::string_view kConnectorTag = "_connector:";
constexpr std::string_view kLinkTag = "_link:";
constexpr std::string_view kParamTag = "_param:";

bool is_space(char c) noexcept { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string where(std::string_view source_name, std::size_t line) {
  std::string out(source_name.empty() ? "<input>" : source_name);
  if (line > 0) out += ":" + std::to_string(line);
  return out;
}

// Tokens sorted longest first so that e.g. "//" wins over "/" if both are
// configured.
std::vector<std::string_view> tokens_of(std::span<const CommentStyle> styles) {
  std::vector<std::string_view> tokens;
  for (const auto& s : styles) tokens.push_back(s.line_token);
  std::stable_sort(tokens.begin(), tokens.end(),
                   [](auto a, auto b) { return a.size() > b.size(); });
  return tokens;
}

bool starts_with_any(std::string_view s, std::span<const CommentStyle> styles) {
  return std::any_of(styles.begin(), styles.end(), [&](const CommentStyle& c) {
    return s.starts_with(c.line_token);
  });
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

}  // namespace

bool is_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_reserved_param(std::string_view name) noexcept {
  return name == kFileParam || name == kIndentParam;
}

CommentStyle CommentStyle::c() { return {"c", "//"}; }
CommentStyle CommentStyle::fortran() { return {"fortran", "!"}; }

CommentStyle CommentStyle::from_flag(std::string_view flag) {
  if (flag == "c") return c();
  if (flag == "fortran") return fortran();
  if (flag.empty() ||
      std::any_of(flag.begin(), flag.end(), [](char ch) {
        return std::isspace(static_cast<unsigned char>(ch));
      })) {
    throw Error(Errc::SchemaError,
                "comment token must be non-empty and contain no whitespace: '" +
                    std::string(flag) + "'");
  }
  return {"custom", std::string(flag)};
}

std::vector<CommentStyle> styles_for_path(const std::filesystem::path& path) {
  static const std::vector<std::string> kCFamily = {
      ".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx",
      ".cu", ".cuh", ".inl", ".ipp", ".cl"};
  static const std::vector<std::string> kFortran = {
      ".f", ".f77", ".f90", ".f95", ".f03", ".f08", ".for", ".ftn", ".fpp"};
  const std::string ext = lower(path.extension().string());
  if (std::find(kCFamily.begin(), kCFamily.end(), ext) != kCFamily.end()) {
    return {CommentStyle::c()};
  }
  if (std::find(kFortran.begin(), kFortran.end(), ext) != kFortran.end()) {
    return {CommentStyle::fortran()};
  }
  return {CommentStyle::c(), CommentStyle::fortran()};
}

ScannedLine scan_line(std::string_view line,
                      std::span<const CommentStyle> styles,
                      std::size_t source_line, std::string_view source_name) {
  std::size_t ws = 0;
  while (ws < line.size() && is_space(line[ws])) ++ws;
  const std::string_view rest = line.substr(ws);

  for (std::string_view token : tokens_of(styles)) {
    if (token.empty() || !rest.starts_with(token)) continue;
    std::string_view after = rest.substr(token.size());

    Directive d;
    d.leading_ws = std::string(line.substr(0, ws));
    d.source_line = source_line;
    if (after.starts_with(kConnectorTag) || after.starts_with(kLinkTag)) {
      const bool is_connector = after.starts_with(kConnectorTag);
      d.kind = is_connector ? DirectiveKind::Connector : DirectiveKind::Link;
      const auto tag = is_connector ? kConnectorTag : kLinkTag;
      const auto id = trim(after.substr(tag.size()));
      if (!is_identifier(id)) {
        throw Error(Errc::MalformedDirective,
                    "invalid identifier '" + std::string(id) + "' in " +
                        std::string(tag.substr(0, tag.size() - 1)) +
                        " directive",
                    where(source_name, source_line));
      }
      d.id_or_name = std::string(id);
      return d;
    }
    if (after.starts_with(kParamTag)) {
      const auto body = after.substr(kParamTag.size());
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw Error(Errc::ParamMissingEquals,
                    "parameter directive without '='",
                    where(source_name, source_line));
      }
      const auto name = trim(body.substr(0, eq));
      if (!is_identifier(name)) {
        throw Error(Errc::MalformedDirective,
                    "invalid parameter name '" + std::string(name) + "'",
                    where(source_name, source_line));
      }
      if (is_reserved_param(name)) {
        throw Error(Errc::ReservedParam,
                    "parameter name '" + std::string(name) + "' is reserved",
                    where(source_name, source_line));
      }
      d.kind = DirectiveKind::Param;
      d.id_or_name = std::string(name);
      d.value = std::string(trim(body.substr(eq + 1)));
      return d;
    }
    // A plain comment with this token; no other token can match better.
    break;
  }
  return CodeLine{std::string(line), source_line};
}

std::size_t ConnectorSection::link_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(body.begin(), body.end(), [](const BodyItem& item) {
        return std::holds_alternative<LinkSlot>(item);
      }));
}

std::vector<const LinkSlot*> ConnectorSection::links() const {
  std::vector<const LinkSlot*> out;
  for (const auto& item : body) {
    if (const auto* link = std::get_if<LinkSlot>(&item)) out.push_back(link);
  }
  return out;
}

const ConnectorSection* Template::find(std::string_view connector_id) const
    noexcept {
  for (const auto& s : sections) {
    if (s.id == connector_id) return &s;
  }
  return nullptr;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

Template parse_template(std::string_view text, std::string source_name,
                        std::span<const CommentStyle> styles) {
  const auto lines = split_lines(text);
  std::vector<ScannedLine> scanned;
  scanned.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    scanned.push_back(scan_line(lines[i], styles, i + 1, source_name));
  }

  const bool has_connector =
      std::any_of(scanned.begin(), scanned.end(), [](const ScannedLine& s) {
        const auto* d = std::get_if<Directive>(&s);
        return d && d->kind == DirectiveKind::Connector;
      });
  if (!has_connector) {
    throw Error(Errc::NoConnector, "template declares no connector",
                where(source_name, 0));
  }

  Template tpl;
  tpl.source_name = std::move(source_name);
  ConnectorSection* current = nullptr;
  bool in_block_comment = false;

  for (std::size_t i = 0; i < scanned.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (const auto* d = std::get_if<Directive>(&scanned[i])) {
      switch (d->kind) {
        case DirectiveKind::Connector:
          if (tpl.find(d->id_or_name) != nullptr) {
            throw Error(Errc::DuplicateConnector,
                        "connector '" + d->id_or_name + "' declared twice",
                        where(tpl.source_name, line_no));
          }
          tpl.sections.push_back(
              ConnectorSection{d->id_or_name, lines[i], line_no, {}, {}});
          current = &tpl.sections.back();
          break;
        case DirectiveKind::Link:
          if (current == nullptr) {
            throw Error(Errc::StrayDirective,
                        "link '" + d->id_or_name + "' before first connector",
                        where(tpl.source_name, line_no));
          }
          current->body.emplace_back(
              LinkSlot{d->id_or_name, d->leading_ws, lines[i], line_no});
          break;
        case DirectiveKind::Param: {
          if (current == nullptr) {
            throw Error(Errc::StrayDirective,
                        "parameter '" + d->id_or_name +
                            "' before first connector",
                        where(tpl.source_name, line_no));
          }
          const bool dup = std::any_of(
              current->params.begin(), current->params.end(),
              [&](const Param& p) { return p.name == d->id_or_name; });
          if (dup) {
            throw Error(Errc::DuplicateParam,
                        "parameter '" + d->id_or_name +
                            "' declared twice in connector '" + current->id +
                            "'",
                        where(tpl.source_name, line_no));
          }
          Param p{d->id_or_name, *d->value};
          current->params.push_back(p);
          current->body.emplace_back(ParamDecl{std::move(p), lines[i], line_no});
          break;
        }
      }
      continue;
    }

    const auto& code = std::get<CodeLine>(scanned[i]);
    if (current != nullptr) {
      current->body.emplace_back(code);
      continue;
    }
    // Header region: only blank lines and comments may precede a connector.
    const auto t = trim(code.text);
    bool ignorable = t.empty() || in_block_comment || t.starts_with("/*") ||
                     starts_with_any(t, styles);
    if (t.starts_with("/*") || in_block_comment) {
      const auto open = in_block_comment ? 0 : 2;
      in_block_comment = t.find("*/", open) == std::string_view::npos;
    }
    if (!ignorable) {
      throw Error(Errc::StrayCode, "code before first connector",
                  where(tpl.source_name, line_no));
    }
    tpl.header.push_back(code.text);
  }
  return tpl;
}

Template load_template(const std::filesystem::path& path,
                       const std::optional<CommentStyle>& style) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::Io, "cannot read template file", path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<CommentStyle> styles =
      style ? std::vector<CommentStyle>{*style} : styles_for_path(path);
  // Diagnostics name the path as given; the tree records the bare file name.
  try {
    return parse_template(buf.str(), path.filename().string(), styles);
  } catch (const Error& e) {
    std::string loc = e.location();
    const auto name = path.filename().string();
    if (loc.starts_with(name)) loc = path.string() + loc.substr(name.size());
    throw Error(e.code(), e.message(), loc);
  }
}

std::string reconstruct(const Template& tpl) {
  std::string out;
  auto put = [&out](const std::string& line) {
    out += line;
    out += '\n';
  };
  for (const auto& section : tpl.sections) {
    put(section.directive_line);
    for (const auto& item : section.body) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CodeLine>) {
              put(v.text);
            } else {
              put(v.raw);
            }
          },
          item);
    }
  }
  return out;
}

}  // namespace pstkit
