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

// Declarative recipes.
//
// A manifest is a JSON document describing one recipe (see
// schema/manifest.schema.json and the README):
//
//   {
//     "templates": {"driver": "driver.c", "kernel": "kernel.c", ...},
//     "root":      {"template": "driver", "connector": "driver"},
//     "nodes": [
//       {"name": "Include", "kind": "codegen",
//        "template": "omp", "connector": "include"},
//       {"name": "FunctionBegin", "kind": "begin", "partner": "FunctionEnd",
//        "family": "loop", "template": "fn", "connector": "function"},
//       {"name": "FunctionEnd", "kind": "end", "partner": "FunctionBegin"},
//       {"name": "Join", "kind": "null"},
//       {"name": "Init", "kind": "subgraph", "function": "spark_block_init",
//        "nodes": {"shockDet": {...}, "initSoln": {...}, "null": {...}}}
//     ],
//     "edges":    {"Include": ["root"], "FunctionBegin": ["Include"], ...},
//     "render":   {"indent_width": 2, "comment_style": "c"},
//     "variants": [{"name": "omp1", "output": "axpy_omp1.c",
//                   "templates": {"fn": "omp_incr1.c"}}]
//   }
//
// Nodes are inserted in declaration order, so dependencies must name
// earlier nodes (or "root").

#ifndef PSTKIT_MANIFEST_HPP_
#define PSTKIT_MANIFEST_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pstkit/pst_json.hpp"
#include "pstkit/recipe.hpp"

namespace pstkit {

struct VariantDecl {
  std::string name;
  std::string output;
  std::map<std::string, std::string> templates;  // alias -> path overrides
};

struct Manifest {
  std::filesystem::path base_dir;
  std::string source_name;
  Json doc;
  std::vector<VariantDecl> variants;

  static Manifest read(const std::filesystem::path& path);
  static Manifest parse(std::string_view text,
                        std::filesystem::path base_dir,
                        std::string source_name = "<manifest>");

  // Template files one variant reads (the base recipe when `variant` is
  // empty), resolved against base_dir.
  std::vector<std::filesystem::path> template_files(
      std::string_view variant) const;
  // Union over every variant, or the base recipe when there are none.
  std::vector<std::filesystem::path> template_files() const;
};

// Parses the templates and builds the recipe graph. With a variant name
// the variant's template overrides apply. The recipe is returned unsealed
// so graph violations can be reported rather than thrown.
Recipe load_manifest(const Manifest& manifest, std::string_view variant = {});

}  // namespace pstkit

#endif  // PSTKIT_MANIFEST_HPP_
