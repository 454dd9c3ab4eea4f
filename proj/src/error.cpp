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

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

std::string format_what(Errc code, const std::string& message,
                        const std::string& location) {
  std::string out;
  if (!location.empty()) {
    out += location;
    out += ": ";
  }
  out += to_string(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedDirective: return "MalformedDirective";
    case Errc::ParamMissingEquals: return "ParamMissingEquals";
    case Errc::ReservedParam: return "ReservedParam";
    case Errc::DuplicateParam: return "DuplicateParam";
    case Errc::NoConnector: return "NoConnector";
    case Errc::DuplicateConnector: return "DuplicateConnector";
    case Errc::StrayDirective: return "StrayDirective";
    case Errc::StrayCode: return "StrayCode";
    case Errc::UnknownConnector: return "UnknownConnector";
    case Errc::UnmatchedConnector: return "UnmatchedConnector";
    case Errc::UnresolvedParam: return "UnresolvedParam";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ForeignHandle: return "ForeignHandle";
    case Errc::EmptyDeps: return "EmptyDeps";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::NotValidated: return "NotValidated";
    case Errc::ContextUnderflow: return "ContextUnderflow";
    case Errc::UnbalancedBuild: return "UnbalancedBuild";
    case Errc::AmbiguousRegion: return "AmbiguousRegion";
    case Errc::UnknownTemplate: return "UnknownTemplate";
    case Errc::UnknownDependency: return "UnknownDependency";
    case Errc::UnknownSubgraph: return "UnknownSubgraph";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::ZeroGenerated: return "ZeroGenerated";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message, std::string location)
    : std::runtime_error(format_what(code, message, location)),
      code_(code),
      location_(std::move(location)),
      message_(message) {}

}  // namespace pstkit
