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

// Independent oracles and generators shared by the unit tests and the
// acceptance runner. Nothing here calls into the code under test except
// the adapters that build a FlowGraph or Pst from plain data.

#ifndef PSTKIT_TESTS_SUPPORT_HPP_
#define PSTKIT_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pstkit/cfg.hpp"
#include "pstkit/pst.hpp"

namespace pstkit::testing {

std::filesystem::path fixture(const std::string& relative);
std::string read_file(const std::filesystem::path& path);

// Plain adjacency data; node 0 plays the implicit root.
struct Digraph {
  std::uint32_t n = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

// The three graph requirements, decided by enumerating paths.
struct Verdict {
  bool acyclic = false;
  bool unique_root_and_leaf = false;
  // Every node lies on a root-to-leaf path and every path from the root
  // ends at the leaf. Only meaningful when the first two hold.
  bool paths_ok = false;

  bool valid() const { return acyclic && unique_root_and_leaf && paths_ok; }
};

Verdict brute_force_verdict(const Digraph& g);

// The same three flags read off a validation report.
Verdict verdict_from_report(const ValidationReport& report);

// Node i of `g` becomes insertion index i (content nodes are CodeGen).
FlowGraph to_flow_graph(const Digraph& g);

// Calls `visit` for every upper-triangular DAG on 1 + content nodes with at
// most `max_edges` edges, for content = 0..max_content.
void for_each_dag(std::uint32_t max_content, std::size_t max_edges,
                  const std::function<void(const Digraph&)>& visit);

// Calls `visit` for every simple digraph on exactly `n` nodes.
void for_each_digraph(std::uint32_t n,
                      const std::function<void(const Digraph&)>& visit);

// A valid graph (one root at 0, one leaf, all nodes on root-leaf paths)
// with nodes labelled in a random non-topological insertion order.
Digraph random_valid_graph(std::mt19937& rng, std::uint32_t max_nodes);

// O(n^2) blocking scheduler: repeatedly picks the lowest index whose
// predecessors have all been visited.
std::vector<std::uint32_t> reference_schedule(const Digraph& g);

// Random tree whose references all resolve and whose text contains no
// directive tokens.
Pst random_tree(std::mt19937& rng);

}  // namespace pstkit::testing

#endif  // PSTKIT_TESTS_SUPPORT_HPP_
