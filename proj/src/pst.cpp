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

#include "pstkit/pst.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

#include "pstkit/error.hpp"

namespace pstkit {

bool PstLink::operator==(const PstLink& other) const = default;

namespace {

// A `${name}` occurrence inside a code line.
struct Reference {
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the closing brace
  std::string name;
  bool malformed = false;
};

std::vector<Reference> scan_references(std::string_view text) {
  std::vector<Reference> refs;
  std::size_t pos = 0;
  while ((pos = text.find("${", pos)) != std::string_view::npos) {
    const auto close = text.find('}', pos + 2);
    Reference ref;
    ref.begin = pos;
    if (close == std::string_view::npos) {
      ref.end = text.size();
      ref.name = std::string(text.substr(pos + 2));
      ref.malformed = true;
    } else {
      ref.end = close + 1;
      ref.name = std::string(text.substr(pos + 2, close - pos - 2));
      ref.malformed = !is_identifier(ref.name);
    }
    refs.push_back(std::move(ref));
    pos = refs.back().end;
  }
  return refs;
}

// Nearest-first parameter lookup over the scopes of the current branch.
class ScopeChain {
 public:
  void push(const std::vector<Param>& params) { scopes_.push_back(&params); }
  void pop() { scopes_.pop_back(); }

  const std::string* find(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const auto& p : **it) {
        if (p.name == name) return &p.value;
      }
    }
    return nullptr;
  }

 private:
  std::vector<const std::vector<Param>*> scopes_;
};

std::size_t count_levels(std::string_view leading_ws, std::size_t width) {
  return width == 0 ? 0 : leading_ws.size() / width;
}

template <typename Conn, typename Fn>
void walk_links(Conn& conn, TreePath& path, Fn&& fn) {
  for (std::size_t b = 0; b < conn.body.size(); ++b) {
    auto* link = std::get_if<PstLink>(&conn.body[b]);
    if (link == nullptr) continue;
    path.push_back(b);
    fn(*link, path);
    for (std::size_t a = 0; a < link->attached.size(); ++a) {
      path.push_back(a);
      walk_links(link->attached[a], path, fn);
      path.pop_back();
    }
    path.pop_back();
  }
}

template <typename Conn>
Conn& connector_in(Conn& root, const TreePath& path, std::size_t length) {
  Conn* conn = &root;
  for (std::size_t i = 0; i + 1 < length; i += 2) {
    if (path[i] >= conn->body.size()) {
      throw Error(Errc::SchemaError, "tree path out of range");
    }
    auto* link = std::get_if<PstLink>(&conn->body[path[i]]);
    if (link == nullptr || path[i + 1] >= link->attached.size()) {
      throw Error(Errc::SchemaError, "tree path does not name a connector");
    }
    conn = &link->attached[path[i + 1]];
  }
  return *conn;
}

}  // namespace

PstConnector& Pst::connector_at(const TreePath& path) {
  if (path.size() % 2 != 0) {
    throw Error(Errc::SchemaError, "odd-length path names a link");
  }
  return connector_in(root_, path, path.size());
}

const PstConnector& Pst::connector_at(const TreePath& path) const {
  if (path.size() % 2 != 0) {
    throw Error(Errc::SchemaError, "odd-length path names a link");
  }
  return connector_in(root_, path, path.size());
}

PstLink& Pst::link_at(const TreePath& path) {
  return const_cast<PstLink&>(std::as_const(*this).link_at(path));
}

const PstLink& Pst::link_at(const TreePath& path) const {
  if (path.size() % 2 != 1) {
    throw Error(Errc::SchemaError, "even-length path names a connector");
  }
  const auto& conn = connector_in(root_, path, path.size() - 1);
  const auto b = path.back();
  const auto* link =
      b < conn.body.size() ? std::get_if<PstLink>(&conn.body[b]) : nullptr;
  if (link == nullptr) {
    throw Error(Errc::SchemaError, "tree path does not name a link");
  }
  return *link;
}

std::string Pst::describe(const TreePath& path) const {
  std::string out = root_.id;
  const PstConnector* conn = &root_;
  for (std::size_t i = 0; i < path.size(); i += 2) {
    const auto* link = path[i] < conn->body.size()
                           ? std::get_if<PstLink>(&conn->body[path[i]])
                           : nullptr;
    if (link == nullptr) return out + "/?";
    out += "/" + link->id;
    if (i + 1 < path.size()) {
      if (path[i + 1] >= link->attached.size()) return out + "[?]";
      out += "[" + std::to_string(path[i + 1]) + "]";
      conn = &link->attached[path[i + 1]];
    }
  }
  return out;
}

PstConnector materialize(const ConnectorSection& section,
                         std::string_view source_name,
                         std::size_t indent_width) {
  PstConnector conn;
  conn.id = section.id;
  conn.source_name = std::string(source_name);
  conn.params = section.params;
  for (const auto& item : section.body) {
    if (const auto* code = std::get_if<CodeLine>(&item)) {
      conn.body.emplace_back(PstCode{code->text});
    } else if (const auto* slot = std::get_if<LinkSlot>(&item)) {
      PstLink link;
      link.id = slot->id;
      link.indent_levels = count_levels(slot->leading_ws, indent_width);
      conn.body.emplace_back(std::move(link));
    }
  }
  return conn;
}

Pst new_tree(const Template& tpl, std::string_view connector_id,
             std::size_t indent_width) {
  const auto* section = tpl.find(connector_id);
  if (section == nullptr) {
    throw Error(Errc::UnknownConnector,
                "no connector '" + std::string(connector_id) + "'",
                tpl.source_name);
  }
  return Pst(materialize(*section, tpl.source_name, indent_width),
             indent_width);
}

std::vector<OpenLink> open_links(const Pst& tree) {
  std::vector<OpenLink> out;
  TreePath path;
  walk_links(tree.root(), path, [&](const PstLink& link, const TreePath& p) {
    out.push_back(OpenLink{p, link.id});
  });
  return out;
}

TreePath attach_section(Pst& tree, const TreePath& link_path,
                        const ConnectorSection& section,
                        std::string_view source_name) {
  auto& link = tree.link_at(link_path);
  link.attached.push_back(
      materialize(section, source_name, tree.indent_width()));
  TreePath out = link_path;
  out.push_back(link.attached.size() - 1);
  return out;
}

std::vector<AttachCount> attach(Pst& tree, const Template& tpl) {
  const auto links = open_links(tree);
  std::vector<std::vector<TreePath>> targets;
  for (const auto& section : tpl.sections) {
    auto& sites = targets.emplace_back();
    for (const auto& l : links) {
      if (l.id == section.id) sites.push_back(l.path);
    }
    if (sites.empty()) {
      throw Error(Errc::UnmatchedConnector,
                  "connector '" + section.id + "' matches no link in tree '" +
                      tree.root().id + "'",
                  tpl.source_name + ":" + std::to_string(section.source_line));
    }
  }
  std::vector<AttachCount> report;
  for (std::size_t s = 0; s < tpl.sections.size(); ++s) {
    for (const auto& site : targets[s]) {
      attach_section(tree, site, tpl.sections[s], tpl.source_name);
    }
    report.push_back(AttachCount{tpl.sections[s].id, targets[s].size()});
  }
  return report;
}

std::string Finding::to_string() const {
  std::string out = severity == Severity::Error ? "error: " : "warning: ";
  switch (kind) {
    case FindingKind::UnresolvedParam:
      out += "UnresolvedParam '" + name + "'";
      break;
    case FindingKind::MalformedReference:
      out += "MalformedReference '${" + name + "'";
      break;
    case FindingKind::EmptyLink:
      out += "EmptyLink '" + name + "'";
      break;
  }
  return out + " at " + path;
}

bool has_errors(const std::vector<Finding>& findings) noexcept {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::Error;
  });
}

namespace {

class Verifier {
 public:
  explicit Verifier(const Pst& tree) : tree_(tree) {}

  std::vector<Finding> run() {
    TreePath path;
    visit(tree_.root(), path);
    return std::move(findings_);
  }

 private:
  void visit(const PstConnector& conn, TreePath& path) {
    scopes_.push(conn.params);
    std::set<std::string> reported;
    for (std::size_t b = 0; b < conn.body.size(); ++b) {
      if (const auto* code = std::get_if<PstCode>(&conn.body[b])) {
        for (const auto& ref : scan_references(code->text)) {
          if (!reported.insert(ref.name).second) continue;
          if (ref.malformed) {
            add(FindingKind::MalformedReference, Severity::Error, path,
                ref.name);
          } else if (scopes_.find(ref.name) == nullptr) {
            add(FindingKind::UnresolvedParam, Severity::Error, path, ref.name);
          }
        }
        continue;
      }
      const auto& link = std::get<PstLink>(conn.body[b]);
      path.push_back(b);
      if (link.attached.empty()) {
        add(FindingKind::EmptyLink, Severity::Warning, path, link.id);
      }
      scopes_.push(link.params);
      for (std::size_t a = 0; a < link.attached.size(); ++a) {
        path.push_back(a);
        visit(link.attached[a], path);
        path.pop_back();
      }
      scopes_.pop();
      path.pop_back();
    }
    scopes_.pop();
  }

  void add(FindingKind kind, Severity sev, const TreePath& path,
           std::string name) {
    findings_.push_back(Finding{kind, sev, tree_.describe(path),
                                std::move(name)});
  }

  const Pst& tree_;
  ScopeChain scopes_;
  std::vector<Finding> findings_;
};

class Renderer {
 public:
  Renderer(const Pst& tree, const RenderOptions& opts)
      : tree_(tree), opts_(opts) {}

  std::string run() {
    TreePath path;
    emit_connector(tree_.root(), 0, path);
    return std::move(out_);
  }

 private:
  void line(std::size_t offset, std::string_view text) {
    if (!text.empty()) out_.append(offset, ' ');
    out_ += text;
    out_ += '\n';
  }

  void trace(std::size_t offset, const std::string& tag) {
    line(offset, opts_.comment_style.line_token + tag);
  }

  std::string substitute(std::string_view text, const TreePath& path) const {
    std::string result;
    std::size_t pos = 0;
    for (const auto& ref : scan_references(text)) {
      const std::string* value =
          ref.malformed ? nullptr : scopes_.find(ref.name);
      if (value == nullptr) {
        throw Error(Errc::UnresolvedParam,
                    (ref.malformed ? "malformed reference '${" + ref.name
                                   : "no definition for '" + ref.name) +
                        "'",
                    tree_.describe(path));
      }
      result.append(text.substr(pos, ref.begin - pos));
      result += *value;
      pos = ref.end;
    }
    result.append(text.substr(pos));
    return result;
  }

  void emit_connector(const PstConnector& conn, std::size_t offset,
                      TreePath& path) {
    if (opts_.verbose) {
      trace(offset, "<_connector:" + conn.id + " file=\"" + conn.source_name +
                        "\">");
    }
    scopes_.push(conn.params);
    for (std::size_t b = 0; b < conn.body.size(); ++b) {
      if (const auto* code = std::get_if<PstCode>(&conn.body[b])) {
        line(offset, substitute(code->text, path));
        continue;
      }
      const auto& link = std::get<PstLink>(conn.body[b]);
      const std::size_t inner = offset + link.indent_levels * opts_.indent_width;
      if (opts_.verbose) trace(inner, "<_link:" + link.id + ">");
      scopes_.push(link.params);
      path.push_back(b);
      for (std::size_t a = 0; a < link.attached.size(); ++a) {
        path.push_back(a);
        emit_connector(link.attached[a], inner, path);
        path.pop_back();
      }
      path.pop_back();
      scopes_.pop();
      if (opts_.verbose) trace(inner, "</_link:" + link.id + ">");
    }
    scopes_.pop();
    if (opts_.verbose) trace(offset, "</_connector:" + conn.id + ">");
  }

  const Pst& tree_;
  const RenderOptions& opts_;
  ScopeChain scopes_;
  std::string out_;
};

}  // namespace

std::vector<Finding> verify(const Pst& tree) { return Verifier(tree).run(); }

std::string render(const Pst& tree, const RenderOptions& opts) {
  return Renderer(tree, opts).run();
}

}  // namespace pstkit
