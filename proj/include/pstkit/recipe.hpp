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

// Recipes: building control-flow graphs of code-generation operations.
//
// Nodes are added in define-and-run style, each naming the handles it
// depends on. Begin/End pairs come from loop_pair(), and reusable pieces of
// graph are packaged as subgraph functions that take an entry handle and a
// bundle of node specs and return the handle of the subgraph's final node.

#ifndef PSTKIT_RECIPE_HPP_
#define PSTKIT_RECIPE_HPP_

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pstkit/cfg.hpp"
#include "pstkit/template.hpp"

namespace pstkit {

struct RegionPayload {
  Binding region;             // section whose body holds the interior link
  std::string interior_link;  // empty selects the region's single link
  std::optional<Binding> footer;
};

// Two partner-linked specs bracketing one region.
std::pair<NodeSpec, NodeSpec> loop_pair(RegionFamily family,
                                        RegionPayload payload,
                                        std::string begin_name = "LoopBegin",
                                        std::string end_name = "LoopEnd");

using NodeBundle = std::map<std::string, NodeSpec, std::less<>>;

class Recipe;
using SubgraphFn =
    std::function<Handle(Recipe&, Handle entry, const NodeBundle& nodes)>;

struct SubgraphInstance {
  std::string function;
  Handle entry;
  Handle exit;
  std::vector<Handle> nodes;  // in insertion order
};

struct RenderSettings {
  std::size_t indent_width = 2;
  std::optional<CommentStyle> comment_style;
  bool verbose = false;
};

class Recipe {
 public:
  Recipe();

  const FlowGraph& graph() const noexcept { return graph_; }
  Handle root() const noexcept { return graph_.root(); }

  Handle add(NodeSpec node, Handle dep);
  Handle add(NodeSpec node, std::span<const Handle> deps);
  Handle add(NodeSpec node, std::initializer_list<Handle> deps);

  void register_template(std::string name, Template tpl);
  bool has_template(std::string_view name) const noexcept;
  const Template& template_named(std::string_view name) const;
  const std::map<std::string, Template, std::less<>>& templates() const {
    return templates_;
  }
  // Resolves a binding to its section; UnknownTemplate or UnknownConnector.
  const ConnectorSection& section_for(const Binding& binding) const;

  void set_root(Binding binding) { root_binding_ = std::move(binding); }
  const std::optional<Binding>& root_binding() const noexcept {
    return root_binding_;
  }

  void declare_subgraph(std::string name, SubgraphFn fn);
  Handle apply_subgraph(std::string_view name, Handle entry,
                        const NodeBundle& nodes);
  const std::vector<SubgraphInstance>& subgraph_instances() const noexcept {
    return instances_;
  }

  // Validates the graph and resolves every binding. Afterwards the recipe
  // rejects further nodes.
  void seal();
  bool sealed() const noexcept { return sealed_; }

  RenderSettings render;

 private:
  void check_open() const;

  FlowGraph graph_;
  std::map<std::string, Template, std::less<>> templates_;
  std::map<std::string, SubgraphFn, std::less<>> subgraphs_;
  std::vector<SubgraphInstance> instances_;
  std::optional<Binding> root_binding_;
  bool sealed_ = false;
};

// shockDet and initSoln both depend on `root`; a null node joins them.
// Bundle keys: shockDet, initSoln, null.
Handle subgraph_block_init(Recipe& recipe, Handle root,
                           const NodeBundle& nodes);

// grvAccel -> calcLims -> calcFlux, which feeds both fluxBuff and
// updSoln -> calcEos; a null node joins fluxBuff and calcEos.
// Bundle keys: grvAccel, calcLims, calcFlux, fluxBuff, updSoln, calcEos,
// null.
Handle subgraph_intra_stage(Recipe& recipe, Handle root,
                            const NodeBundle& nodes);

}  // namespace pstkit

#endif  // PSTKIT_RECIPE_HPP_
