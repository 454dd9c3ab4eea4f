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

// Control-flow graphs of code-generation operations.
//
// A graph is built by inserting nodes together with the handles they depend
// on. A valid graph is acyclic, has one root and one leaf, and every node
// lies on a root-to-leaf path. Begin/End node pairs bracket nested regions
// (loops, concurrent-data sections) and must nest properly along every
// path.

#ifndef PSTKIT_CFG_HPP_
#define PSTKIT_CFG_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pstkit {

// Graph-scoped node identifier.
struct Handle {
  std::uint64_t graph = 0;
  std::uint32_t index = 0;

  auto operator<=>(const Handle&) const = default;
};

enum class NodeKind { Root, CodeGen, Begin, End, Null };
enum class RegionFamily { Loop, ConcurrentData };

std::string_view to_string(NodeKind kind) noexcept;

// A (template, connector) pair; the template name is resolved through a
// recipe's registry.
struct Binding {
  std::string template_name;
  std::string connector;

  bool operator==(const Binding&) const = default;
};

struct NodeSpec {
  NodeKind kind = NodeKind::Null;
  std::string name;
  // CodeGen: the section to attach. Begin: the region section. End: an
  // optional section attached after the region closes.
  std::optional<Binding> action;
  // Begin only. Empty selects the region section's single link.
  std::string interior_link;
  RegionFamily family = RegionFamily::Loop;
  // Shared by the two members of a Begin/End pair; 0 when unpaired.
  std::uint64_t pair_id = 0;

  static NodeSpec codegen(std::string name, Binding binding);
  static NodeSpec null(std::string name = "null");

  bool operator==(const NodeSpec&) const = default;
};

struct Edge {
  std::uint32_t from = 0;
  std::uint32_t to = 0;

  bool operator==(const Edge&) const = default;
};

struct Violation {
  enum class Kind {
    Cycle,
    MultipleRoots,
    NoLeaf,
    MultipleLeaves,
    Unreachable,
    DeadEnd,
    UnmatchedBeginEnd,
  };
  Kind kind = Kind::Cycle;
  std::vector<Handle> nodes;
  std::string message;
};

std::string_view to_string(Violation::Kind kind) noexcept;

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation::Kind kind) const noexcept;
};

class FlowGraph {
 public:
  FlowGraph();

  Handle root() const noexcept { return Handle{id_, 0}; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint64_t id() const noexcept { return id_; }

  // Inserts `node` and one edge from each distinct dependency.
  Handle add(NodeSpec node, std::span<const Handle> deps);
  Handle add(NodeSpec node, Handle dep);
  Handle add(NodeSpec node, std::initializer_list<Handle> deps);

  // Low-level construction, used for arbitrary topologies. add_edge
  // returns false when the edge already exists.
  Handle add_node(NodeSpec node);
  bool add_edge(Handle from, Handle to);

  const NodeSpec& node(Handle h) const;
  Handle handle_at(std::size_t index) const;
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::uint32_t>& successors(Handle h) const;
  const std::vector<std::uint32_t>& predecessors(Handle h) const;

  // Partner of a Begin/End node present in this graph.
  std::optional<Handle> partner(Handle h) const;

  // Records a successful result for the current graph revision; traverse()
  // and longest_path() refuse graphs without one.
  ValidationReport validate() const;
  bool is_validated() const noexcept;

  // Open regions (Begin handles, outermost first) in effect when `h` is
  // reached. Requires a validated graph.
  std::vector<Handle> regions_entering(Handle h) const;

 private:
  void check(Handle h) const;

  std::uint64_t id_;
  std::uint64_t revision_ = 0;
  mutable std::optional<std::uint64_t> validated_revision_;
  mutable std::vector<std::vector<Handle>> entering_;
  std::vector<NodeSpec> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> succ_;
  std::vector<std::vector<std::uint32_t>> pred_;
};

// Blocking traversal: a node is visited once all its predecessors have
// been; among ready nodes the lowest insertion index goes first.
std::vector<Handle> traverse(
    const FlowGraph& graph,
    const std::function<void(Handle, const NodeSpec&)>& visit = {});

// A maximum-length root-to-leaf path. Ties prefer lower insertion indices.
std::vector<Handle> longest_path(const FlowGraph& graph);

// Graphviz rendering for inspection.
std::string to_dot(const FlowGraph& graph);

}  // namespace pstkit

#endif  // PSTKIT_CFG_HPP_
