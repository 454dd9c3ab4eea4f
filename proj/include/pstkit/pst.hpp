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

// Parametrized source trees.
//
// A tree level is connector -> code -> link: a connector owns code lines
// and links, and each link owns the connectors attached to it. Parameters
// declared on a connector or link are visible to every level below it and
// are substituted into `${name}` references when the tree is rendered.

#ifndef PSTKIT_PST_HPP_
#define PSTKIT_PST_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pstkit/template.hpp"

namespace pstkit {

struct PstCode {
  std::string text;

  bool operator==(const PstCode&) const = default;
};

struct PstConnector;

struct PstLink {
  std::string id;
  std::size_t indent_levels = 0;  // serialized as __indent__
  std::vector<Param> params;
  std::vector<PstConnector> attached;

  bool operator==(const PstLink& other) const;
};

using PstItem = std::variant<PstCode, PstLink>;

struct PstConnector {
  std::string id;
  std::string source_name;  // serialized as __file__
  std::vector<Param> params;
  std::vector<PstItem> body;

  bool operator==(const PstConnector&) const = default;
};

// Location of a connector or link inside a tree: body index and attachment
// index alternate, starting at the root connector. Connector paths have
// even length (the root is the empty path), link paths odd length.
// Attachment only appends, so paths stay valid as a tree grows.
using TreePath = std::vector<std::size_t>;

class Pst {
 public:
  Pst() = default;
  explicit Pst(PstConnector root, std::size_t indent_width = 2)
      : root_(std::move(root)), indent_width_(indent_width) {}

  PstConnector& root() noexcept { return root_; }
  const PstConnector& root() const noexcept { return root_; }
  std::size_t indent_width() const noexcept { return indent_width_; }

  PstConnector& connector_at(const TreePath& path);
  const PstConnector& connector_at(const TreePath& path) const;
  PstLink& link_at(const TreePath& path);
  const PstLink& link_at(const TreePath& path) const;

  // Human-readable form such as "function/kernel[0]".
  std::string describe(const TreePath& path) const;

  bool operator==(const Pst&) const = default;

 private:
  PstConnector root_;
  std::size_t indent_width_ = 2;
};

PstConnector materialize(const ConnectorSection& section,
                         std::string_view source_name,
                         std::size_t indent_width);

Pst new_tree(const Template& tpl, std::string_view connector_id,
             std::size_t indent_width = 2);

struct OpenLink {
  TreePath path;
  std::string id;

  bool operator==(const OpenLink&) const = default;
};

// Every link in depth-first document order. Links stay open after
// attachment; any number of connectors may attach to one link.
std::vector<OpenLink> open_links(const Pst& tree);

// Appends a fresh connector built from `section` to the link at
// `link_path` and returns the new connector's path.
TreePath attach_section(Pst& tree, const TreePath& link_path,
                        const ConnectorSection& section,
                        std::string_view source_name);

struct AttachCount {
  std::string connector_id;
  std::size_t count = 0;

  bool operator==(const AttachCount&) const = default;
};

// Attaches every section of `tpl` to every link with the same id. Fails
// with UnmatchedConnector, leaving the tree untouched, if some section
// matches no link.
std::vector<AttachCount> attach(Pst& tree, const Template& tpl);

enum class FindingKind { UnresolvedParam, MalformedReference, EmptyLink };
enum class Severity { Warning, Error };

struct Finding {
  FindingKind kind = FindingKind::UnresolvedParam;
  Severity severity = Severity::Error;
  std::string path;
  std::string name;

  std::string to_string() const;
  bool operator==(const Finding&) const = default;
};

std::vector<Finding> verify(const Pst& tree);

bool has_errors(const std::vector<Finding>& findings) noexcept;

struct RenderOptions {
  bool verbose = false;
  CommentStyle comment_style = CommentStyle::c();
  std::size_t indent_width = 2;
};

// Emits source text with `\n` line endings. Throws UnresolvedParam when a
// reference has no definition in scope.
std::string render(const Pst& tree, const RenderOptions& opts = {});

}  // namespace pstkit

#endif  // PSTKIT_PST_HPP_
