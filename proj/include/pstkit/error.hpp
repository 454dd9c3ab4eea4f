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

#ifndef PSTKIT_ERROR_HPP_
#define PSTKIT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pstkit {

enum class Errc {
  // template parsing
  MalformedDirective,
  ParamMissingEquals,
  ReservedParam,
  DuplicateParam,
  NoConnector,
  DuplicateConnector,
  StrayDirective,
  StrayCode,
  // tree composition
  UnknownConnector,
  UnmatchedConnector,
  UnresolvedParam,
  SchemaError,
  // control-flow graphs
  ForeignHandle,
  EmptyDeps,
  SelfLoop,
  NotValidated,
  // recipes and builds
  ContextUnderflow,
  UnbalancedBuild,
  AmbiguousRegion,
  UnknownTemplate,
  UnknownDependency,
  UnknownSubgraph,
  DuplicateName,
  // metrics
  ZeroGenerated,
  Io,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this type. `location` is a
// "file:line" or "file:json-path" string when one is known.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string location = {});

  Errc code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string location_;
  std::string message_;
};

}  // namespace pstkit

#endif  // PSTKIT_ERROR_HPP_
