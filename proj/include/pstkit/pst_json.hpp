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

#ifndef PSTKIT_PST_JSON_HPP_
#define PSTKIT_PST_JSON_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pstkit/pst.hpp"

namespace pstkit {

using Json = nlohmann::ordered_json;

// Document layout:
//
//   {"_param:__file__": F, "_connector:ID": {"_param:NAME": V, ...,
//                                            "_code": [LINE | LINK, ...]}}
//   LINK      = {"_param:__indent__": N, "_param:NAME": V, ...,
//                "_link:ID": [ATTACHED, ...]}
//   ATTACHED  = {"_param:__file__": F, "_param:NAME": V, ..., "_code": [...]}
Json to_json(const Pst& tree);

// Two-space indentation, keys in canonical order, trailing newline.
std::string to_json_string(const Pst& tree);

// Throws SchemaError naming the offending JSON path.
Pst from_json(const Json& doc, std::size_t indent_width = 2);
Pst from_json_string(std::string_view text, std::size_t indent_width = 2);

}  // namespace pstkit

#endif  // PSTKIT_PST_JSON_HPP_
