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

// Building trees from recipes.
//
// The driver walks a validated recipe graph in blocking order and grows a
// tree as nodes are visited. It keeps a stack of attachment frames: the
// root connector at the bottom and one frame per open Begin/End region.
//
// A CodeGen node attaches its section at every link with the section's id
// found in the innermost frame that has one, searching outward to the root
// otherwise. Searching a frame descends through attached connectors but
// not into regions: a closed region is opaque and an open one is searched
// through its own frame.

#ifndef PSTKIT_DRIVER_HPP_
#define PSTKIT_DRIVER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pstkit/cfg.hpp"
#include "pstkit/error.hpp"
#include "pstkit/pst.hpp"
#include "pstkit/recipe.hpp"

namespace pstkit {

enum class Operation { Attach, OpenRegion, CloseRegion };

std::string_view to_string(Operation op) noexcept;

struct VisitRecord {
  std::string node;
  Operation operation = Operation::Attach;
  std::vector<std::string> links;  // links touched, as Pst::describe paths
};

struct BuildFailure {
  Errc code = Errc::SchemaError;
  std::string what;
  std::string partial_tree_json;
};

struct BuildContext {
  struct Frame {
    Handle begin;
    TreePath region;  // connector attached by the Begin node
  };

  Pst tree;
  std::vector<Frame> link_stack;  // index 0 is the root frame
  std::vector<VisitRecord> emitted;
  std::vector<TreePath> regions;  // every region connector, open or closed
  std::optional<BuildFailure> failure;
};

// Builds the tree for `recipe` starting from its root binding. Throws
// NotValidated for invalid graphs; attachment errors propagate after being
// recorded in `ctx`.
Pst build(const Recipe& recipe, BuildContext& ctx);
Pst build(const Recipe& recipe);
Pst build(const Recipe& recipe, const Template& root_template,
          std::string_view root_connector, BuildContext& ctx);
Pst build(const Recipe& recipe, const Template& root_template,
          std::string_view root_connector);

struct BuildReport {
  std::vector<VisitRecord> log;
  std::optional<BuildFailure> failure;

  std::string to_string() const;
};

BuildReport build_report(const BuildContext& ctx);

// Renders with the recipe's settings, overridable by the caller.
std::string render(const Pst& tree, const RenderSettings& settings);

}  // namespace pstkit

#endif  // PSTKIT_DRIVER_HPP_
