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

#include "pstkit/cfg.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <sstream>

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

std::uint64_t next_graph_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept {
  switch (kind) {
    case NodeKind::Root: return "root";
    case NodeKind::CodeGen: return "codegen";
    case NodeKind::Begin: return "begin";
    case NodeKind::End: return "end";
    case NodeKind::Null: return "null";
  }
  return "?";
}

std::string_view to_string(Violation::Kind kind) noexcept {
  switch (kind) {
    case Violation::Kind::Cycle: return "Cycle";
    case Violation::Kind::MultipleRoots: return "MultipleRoots";
    case Violation::Kind::NoLeaf: return "NoLeaf";
    case Violation::Kind::MultipleLeaves: return "MultipleLeaves";
    case Violation::Kind::Unreachable: return "Unreachable";
    case Violation::Kind::DeadEnd: return "DeadEnd";
    case Violation::Kind::UnmatchedBeginEnd: return "UnmatchedBeginEnd";
  }
  return "?";
}

NodeSpec NodeSpec::codegen(std::string name, Binding binding) {
  NodeSpec spec;
  spec.kind = NodeKind::CodeGen;
  spec.name = std::move(name);
  spec.action = std::move(binding);
  return spec;
}

NodeSpec NodeSpec::null(std::string name) {
  NodeSpec spec;
  spec.kind = NodeKind::Null;
  spec.name = std::move(name);
  return spec;
}

bool ValidationReport::has(Violation::Kind kind) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

FlowGraph::FlowGraph() : id_(next_graph_id()) {
  NodeSpec root;
  root.kind = NodeKind::Root;
  root.name = "root";
  nodes_.push_back(std::move(root));
  succ_.emplace_back();
  pred_.emplace_back();
}

void FlowGraph::check(Handle h) const {
  if (h.graph != id_ || h.index >= nodes_.size()) {
    throw Error(Errc::ForeignHandle,
                "handle does not belong to this graph (node " +
                    std::to_string(h.index) + ")");
  }
}

Handle FlowGraph::add_node(NodeSpec node) {
  if (node.kind == NodeKind::Root) {
    throw Error(Errc::SchemaError,
                "a graph has exactly one root, created with the graph");
  }
  nodes_.push_back(std::move(node));
  succ_.emplace_back();
  pred_.emplace_back();
  ++revision_;
  return Handle{id_, static_cast<std::uint32_t>(nodes_.size() - 1)};
}

bool FlowGraph::add_edge(Handle from, Handle to) {
  check(from);
  check(to);
  if (from == to) {
    throw Error(Errc::SelfLoop, "self-loop on node '" +
                                    nodes_[from.index].name + "'");
  }
  auto& out = succ_[from.index];
  if (std::find(out.begin(), out.end(), to.index) != out.end()) return false;
  out.push_back(to.index);
  pred_[to.index].push_back(from.index);
  edges_.push_back(Edge{from.index, to.index});
  ++revision_;
  return true;
}

Handle FlowGraph::add(NodeSpec node, std::span<const Handle> deps) {
  if (deps.empty()) {
    throw Error(Errc::EmptyDeps,
                "node '" + node.name + "' must depend on at least one node");
  }
  for (const auto& d : deps) check(d);
  const Handle h = add_node(std::move(node));
  for (const auto& d : deps) add_edge(d, h);
  return h;
}

Handle FlowGraph::add(NodeSpec node, Handle dep) {
  return add(std::move(node), std::span<const Handle>(&dep, 1));
}

Handle FlowGraph::add(NodeSpec node, std::initializer_list<Handle> deps) {
  return add(std::move(node), std::span<const Handle>(deps.begin(), deps.size()));
}

const NodeSpec& FlowGraph::node(Handle h) const {
  check(h);
  return nodes_[h.index];
}

Handle FlowGraph::handle_at(std::size_t index) const {
  if (index >= nodes_.size()) {
    throw Error(Errc::ForeignHandle, "node index out of range");
  }
  return Handle{id_, static_cast<std::uint32_t>(index)};
}

const std::vector<std::uint32_t>& FlowGraph::successors(Handle h) const {
  check(h);
  return succ_[h.index];
}

const std::vector<std::uint32_t>& FlowGraph::predecessors(Handle h) const {
  check(h);
  return pred_[h.index];
}

std::optional<Handle> FlowGraph::partner(Handle h) const {
  const auto& spec = node(h);
  if (spec.pair_id == 0 ||
      (spec.kind != NodeKind::Begin && spec.kind != NodeKind::End)) {
    return std::nullopt;
  }
  const auto want = spec.kind == NodeKind::Begin ? NodeKind::End
                                                 : NodeKind::Begin;
  std::optional<Handle> found;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].kind == want && nodes_[i].pair_id == spec.pair_id) {
      if (found) return std::nullopt;  // ambiguous: the pair was reused
      found = handle_at(i);
    }
  }
  return found;
}

bool FlowGraph::is_validated() const noexcept {
  return validated_revision_ && *validated_revision_ == revision_;
}

ValidationReport FlowGraph::validate() const {
  using Kind = Violation::Kind;
  ValidationReport report;
  const std::size_t n = nodes_.size();
  auto handles = [&](const std::vector<std::uint32_t>& idx) {
    std::vector<Handle> out;
    for (auto i : idx) out.push_back(Handle{id_, i});
    return out;
  };
  auto names = [&](const std::vector<std::uint32_t>& idx) {
    std::string out;
    for (auto i : idx) {
      if (!out.empty()) out += ", ";
      out += "'" + nodes_[i].name + "'";
    }
    return out;
  };

  // (1) acyclicity, by Kahn's algorithm.
  std::vector<std::size_t> indeg(n);
  for (std::size_t v = 0; v < n; ++v) indeg[v] = pred_[v].size();
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push_back(static_cast<std::uint32_t>(v));
  }
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (auto w : succ_[v]) {
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  const bool acyclic = order.size() == n;
  if (!acyclic) {
    // Report the nodes that lie on a cycle, not those merely downstream.
    std::vector<std::uint32_t> on_cycle;
    for (std::size_t v = 0; v < n; ++v) {
      if (indeg[v] == 0) continue;
      std::vector<char> seen(n, 0);
      std::vector<std::uint32_t> stack(succ_[v].begin(), succ_[v].end());
      bool back = false;
      while (!stack.empty() && !back) {
        const auto u = stack.back();
        stack.pop_back();
        if (u == v) back = true;
        if (seen[u]) continue;
        seen[u] = 1;
        stack.insert(stack.end(), succ_[u].begin(), succ_[u].end());
      }
      if (back) on_cycle.push_back(static_cast<std::uint32_t>(v));
    }
    report.violations.push_back(
        {Kind::Cycle, handles(on_cycle), "cycle through " + names(on_cycle)});
  }

  // (2) unique root and unique leaf.
  std::vector<std::uint32_t> sources;
  std::vector<std::uint32_t> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (pred_[v].empty()) sources.push_back(static_cast<std::uint32_t>(v));
    if (succ_[v].empty()) leaves.push_back(static_cast<std::uint32_t>(v));
  }
  if (sources.size() != 1 || sources.front() != 0) {
    report.violations.push_back(
        {Kind::MultipleRoots, handles(sources),
         sources.empty() ? std::string("root has incoming edges")
                         : "nodes without predecessors: " + names(sources)});
  }
  if (leaves.empty()) {
    report.violations.push_back({Kind::NoLeaf, {}, "graph has no leaf"});
  } else if (leaves.size() > 1) {
    report.violations.push_back(
        {Kind::MultipleLeaves, handles(leaves),
         "more than one leaf: " + names(leaves)});
  }

  // (3) every node is reachable from the root and reaches the leaf.
  auto reach = [&](std::uint32_t start,
                   const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto w : adj[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  const auto from_root = reach(0, succ_);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!from_root[v]) {
      report.violations.push_back({Kind::Unreachable, {Handle{id_, v}},
                                   "'" + nodes_[v].name +
                                       "' is not reachable from the root"});
    }
  }
  if (leaves.size() == 1) {
    const auto to_leaf = reach(leaves.front(), pred_);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (!to_leaf[v]) {
        report.violations.push_back(
            {Kind::DeadEnd, {Handle{id_, v}},
             "'" + nodes_[v].name + "' does not reach the leaf"});
      }
    }
  }

  // (4) Begin/End pairs nest properly along every path.
  std::vector<std::vector<Handle>> entering(n);
  if (acyclic) {
    std::vector<std::vector<std::uint32_t>> leaving(n);
    std::vector<char> flagged(n, 0);
    auto unmatched = [&](std::uint32_t v, const std::string& why) {
      if (flagged[v]) return;
      flagged[v] = 1;
      report.violations.push_back({Kind::UnmatchedBeginEnd, {Handle{id_, v}},
                                   "'" + nodes_[v].name + "' " + why});
    };
    for (auto v : order) {
      std::vector<std::uint32_t> stack;
      if (!pred_[v].empty()) {
        stack = leaving[pred_[v].front()];
        for (auto p : pred_[v]) {
          if (leaving[p] != stack) {
            unmatched(v, "joins paths with different open regions");
          }
        }
      }
      for (auto b : stack) entering[v].push_back(Handle{id_, b});
      const auto& spec = nodes_[v];
      if (spec.kind == NodeKind::Begin || spec.kind == NodeKind::End) {
        const auto mate = partner(Handle{id_, v});
        if (!mate) {
          unmatched(v, "has no partner in this graph");
        } else if (spec.kind == NodeKind::Begin) {
          stack.push_back(v);
        } else if (stack.empty() || stack.back() != mate->index) {
          unmatched(v, "closes a region that is not innermost");
        } else {
          stack.pop_back();
        }
      }
      if (succ_[v].empty() && !stack.empty()) {
        for (auto b : stack) unmatched(b, "is never closed");
      }
      leaving[v] = std::move(stack);
    }
  }

  if (report.ok()) {
    validated_revision_ = revision_;
    entering_ = std::move(entering);
  } else {
    validated_revision_.reset();
  }
  return report;
}

std::vector<Handle> FlowGraph::regions_entering(Handle h) const {
  check(h);
  if (!is_validated()) {
    throw Error(Errc::NotValidated, "graph has not been validated");
  }
  return entering_[h.index];
}

std::vector<Handle> traverse(
    const FlowGraph& graph,
    const std::function<void(Handle, const NodeSpec&)>& visit) {
  if (!graph.is_validated()) {
    throw Error(Errc::NotValidated, "traverse requires a validated graph");
  }
  const std::size_t n = graph.size();
  std::vector<std::size_t> waiting(n);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                      std::greater<>>
      ready;
  for (std::size_t v = 0; v < n; ++v) {
    waiting[v] = graph.predecessors(graph.handle_at(v)).size();
    if (waiting[v] == 0) ready.push(static_cast<std::uint32_t>(v));
  }
  std::vector<Handle> order;
  order.reserve(n);
  while (!ready.empty()) {
    const auto h = graph.handle_at(ready.top());
    ready.pop();
    order.push_back(h);
    if (visit) visit(h, graph.node(h));
    for (auto w : graph.successors(h)) {
      if (--waiting[w] == 0) ready.push(w);
    }
  }
  return order;
}

std::vector<Handle> longest_path(const FlowGraph& graph) {
  const auto order = traverse(graph);
  const std::size_t n = graph.size();
  std::vector<std::size_t> dist(n, 0);
  std::vector<std::optional<std::uint32_t>> via(n);
  for (const auto& h : order) {
    for (auto p : graph.predecessors(h)) {
      const auto cand = dist[p] + 1;
      if (cand > dist[h.index] ||
          (cand == dist[h.index] && via[h.index] && p < *via[h.index])) {
        dist[h.index] = cand;
        via[h.index] = p;
      }
    }
  }
  std::vector<Handle> path{order.back()};
  while (via[path.back().index]) {
    path.push_back(graph.handle_at(*via[path.back().index]));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::string to_dot(const FlowGraph& graph) {
  std::ostringstream out;
  out << "digraph flow {\n";
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto& spec = graph.node(graph.handle_at(v));
    std::string attrs = "label=" + quoted(spec.name);
    switch (spec.kind) {
      case NodeKind::Root: attrs += ", shape=doublecircle"; break;
      case NodeKind::CodeGen: attrs += ", shape=ellipse"; break;
      case NodeKind::Begin:
      case NodeKind::End: attrs += ", shape=box, style=rounded"; break;
      case NodeKind::Null: attrs += ", shape=point"; break;
    }
    out << "  n" << v << " [" << attrs << "];\n";
  }
  for (const auto& e : graph.edges()) {
    out << "  n" << e.from << " -> n" << e.to << ";\n";
  }
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const auto h = graph.handle_at(v);
    if (graph.node(h).kind != NodeKind::Begin) continue;
    if (const auto mate = graph.partner(h)) {
      out << "  n" << v << " -> n" << mate->index
          << " [style=dashed, arrowhead=none, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace pstkit
