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

#include "pstkit/recipe.hpp"

#include <atomic>

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

std::uint64_t next_pair_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

const NodeSpec& bundle_at(const NodeBundle& nodes, std::string_view key) {
  const auto it = nodes.find(key);
  if (it == nodes.end()) {
    throw Error(Errc::SchemaError,
                "node bundle lacks '" + std::string(key) + "'");
  }
  return it->second;
}

std::string describe(const Binding& b) {
  return b.template_name + ":" + b.connector;
}

}  // namespace

std::pair<NodeSpec, NodeSpec> loop_pair(RegionFamily family,
                                        RegionPayload payload,
                                        std::string begin_name,
                                        std::string end_name) {
  const auto id = next_pair_id();
  NodeSpec begin;
  begin.kind = NodeKind::Begin;
  begin.name = std::move(begin_name);
  begin.action = std::move(payload.region);
  begin.interior_link = std::move(payload.interior_link);
  begin.family = family;
  begin.pair_id = id;

  NodeSpec end;
  end.kind = NodeKind::End;
  end.name = std::move(end_name);
  end.action = std::move(payload.footer);
  end.family = family;
  end.pair_id = id;
  return {std::move(begin), std::move(end)};
}

Recipe::Recipe() {
  declare_subgraph("spark_block_init", subgraph_block_init);
  declare_subgraph("spark_intra_stage", subgraph_intra_stage);
}

void Recipe::check_open() const {
  if (sealed_) throw Error(Errc::SchemaError, "recipe is sealed");
}

Handle Recipe::add(NodeSpec node, Handle dep) {
  check_open();
  return graph_.add(std::move(node), dep);
}

Handle Recipe::add(NodeSpec node, std::span<const Handle> deps) {
  check_open();
  return graph_.add(std::move(node), deps);
}

Handle Recipe::add(NodeSpec node, std::initializer_list<Handle> deps) {
  check_open();
  return graph_.add(std::move(node), deps);
}

void Recipe::register_template(std::string name, Template tpl) {
  check_open();
  templates_.insert_or_assign(std::move(name), std::move(tpl));
}

bool Recipe::has_template(std::string_view name) const noexcept {
  return templates_.find(name) != templates_.end();
}

const Template& Recipe::template_named(std::string_view name) const {
  const auto it = templates_.find(name);
  if (it == templates_.end()) {
    throw Error(Errc::UnknownTemplate,
                "no template registered as '" + std::string(name) + "'");
  }
  return it->second;
}

const ConnectorSection& Recipe::section_for(const Binding& binding) const {
  const auto& tpl = template_named(binding.template_name);
  const auto* section = tpl.find(binding.connector);
  if (section == nullptr) {
    throw Error(Errc::UnknownConnector,
                "template '" + binding.template_name + "' has no connector '" +
                    binding.connector + "'",
                tpl.source_name);
  }
  return *section;
}

void Recipe::declare_subgraph(std::string name, SubgraphFn fn) {
  subgraphs_.insert_or_assign(std::move(name), std::move(fn));
}

Handle Recipe::apply_subgraph(std::string_view name, Handle entry,
                              const NodeBundle& nodes) {
  check_open();
  const auto it = subgraphs_.find(name);
  if (it == subgraphs_.end()) {
    throw Error(Errc::UnknownSubgraph,
                "no subgraph function '" + std::string(name) + "'");
  }
  const auto before = graph_.size();
  const Handle exit = it->second(*this, entry, nodes);
  SubgraphInstance inst{std::string(name), entry, exit, {}};
  for (auto i = before; i < graph_.size(); ++i) {
    inst.nodes.push_back(graph_.handle_at(i));
  }
  instances_.push_back(std::move(inst));
  return exit;
}

void Recipe::seal() {
  if (sealed_) return;
  const auto report = graph_.validate();
  if (!report.ok()) {
    std::string what;
    for (const auto& v : report.violations) {
      if (!what.empty()) what += "; ";
      what += std::string(to_string(v.kind)) + ": " + v.message;
    }
    throw Error(Errc::NotValidated, what);
  }
  if (root_binding_) section_for(*root_binding_);
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    const auto& spec = graph_.node(graph_.handle_at(i));
    switch (spec.kind) {
      case NodeKind::CodeGen:
      case NodeKind::Begin: {
        if (!spec.action) {
          throw Error(Errc::UnknownTemplate,
                      "node '" + spec.name + "' has no template binding");
        }
        const auto& section = section_for(*spec.action);
        if (spec.kind == NodeKind::Begin) {
          const auto links = section.links();
          std::size_t matches = 0;
          for (const auto* l : links) {
            if (l->id == spec.interior_link) ++matches;
          }
          const bool ok = spec.interior_link.empty() ? links.size() == 1
                                                     : matches == 1;
          if (!ok) {
            throw Error(Errc::AmbiguousRegion,
                        "region '" + describe(*spec.action) +
                            "' of node '" + spec.name +
                            "' needs exactly one interior link" +
                            (spec.interior_link.empty()
                                 ? std::string()
                                 : " named '" + spec.interior_link + "'"));
          }
        }
        break;
      }
      case NodeKind::End:
        if (spec.action) section_for(*spec.action);
        break;
      case NodeKind::Root:
      case NodeKind::Null:
        break;
    }
  }
  sealed_ = true;
}

Handle subgraph_block_init(Recipe& recipe, Handle root,
                           const NodeBundle& nodes) {
  const auto shock_det = recipe.add(bundle_at(nodes, "shockDet"), root);
  const auto init_soln = recipe.add(bundle_at(nodes, "initSoln"), root);
  return recipe.add(bundle_at(nodes, "null"), {shock_det, init_soln});
}

Handle subgraph_intra_stage(Recipe& recipe, Handle root,
                            const NodeBundle& nodes) {
  const auto grv_accel = recipe.add(bundle_at(nodes, "grvAccel"), root);
  const auto calc_lims = recipe.add(bundle_at(nodes, "calcLims"), grv_accel);
  const auto calc_flux = recipe.add(bundle_at(nodes, "calcFlux"), calc_lims);
  const auto flux_buff = recipe.add(bundle_at(nodes, "fluxBuff"), calc_flux);
  const auto upd_soln = recipe.add(bundle_at(nodes, "updSoln"), calc_flux);
  const auto calc_eos = recipe.add(bundle_at(nodes, "calcEos"), upd_soln);
  return recipe.add(bundle_at(nodes, "null"), {flux_buff, calc_eos});
}

}  // namespace pstkit
