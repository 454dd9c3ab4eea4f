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

#include "pstkit/pst_json.hpp"

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

constexpr std::string_view kParamPrefix = "_param:";
constexpr std::string_view kConnectorPrefix = "_connector:";
constexpr std::string_view kLinkPrefix = "_link:";
constexpr std::string_view kCodeKey = "_code";

std::string param_key(std::string_view name) {
  return std::string(kParamPrefix) + std::string(name);
}

Json code_to_json(const PstConnector& conn);

Json attached_to_json(const PstConnector& conn) {
  Json obj = Json::object();
  obj[param_key(kFileParam)] = conn.source_name;
  for (const auto& p : conn.params) obj[param_key(p.name)] = p.value;
  obj[std::string(kCodeKey)] = code_to_json(conn);
  return obj;
}

Json code_to_json(const PstConnector& conn) {
  Json code = Json::array();
  for (const auto& item : conn.body) {
    if (const auto* line = std::get_if<PstCode>(&item)) {
      code.push_back(line->text);
      continue;
    }
    const auto& link = std::get<PstLink>(item);
    Json obj = Json::object();
    obj[param_key(kIndentParam)] = link.indent_levels;
    for (const auto& p : link.params) obj[param_key(p.name)] = p.value;
    Json attached = Json::array();
    for (const auto& child : link.attached) {
      attached.push_back(attached_to_json(child));
    }
    obj[std::string(kLinkPrefix) + link.id] = std::move(attached);
    code.push_back(std::move(obj));
  }
  return code;
}

[[noreturn]] void schema_error(const std::string& where,
                               const std::string& what) {
  throw Error(Errc::SchemaError, what, where);
}

std::string child_path(const std::string& parent, std::string_view key) {
  return parent + "." + std::string(key);
}

std::string index_path(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

std::string string_value(const Json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

// Reads a user parameter key into `params`; returns false for keys that are
// not parameters at all.
bool read_user_param(const std::string& key, const Json& value,
                     const std::string& where, std::vector<Param>& params) {
  if (!key.starts_with(kParamPrefix)) return false;
  const auto name = key.substr(kParamPrefix.size());
  if (!is_identifier(name)) schema_error(where, "invalid parameter name");
  if (is_reserved_param(name)) {
    schema_error(where, "reserved parameter not allowed here");
  }
  params.push_back(Param{name, string_value(value, where)});
  return true;
}

void read_code(const Json& code, const std::string& where, PstConnector& conn);

PstConnector read_attached(const Json& obj, std::string_view id,
                           const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected a connector object");
  PstConnector conn;
  conn.id = std::string(id);
  bool have_file = false;
  const Json* code = nullptr;
  for (const auto& [key, value] : obj.items()) {
    const auto at = child_path(where, key);
    if (key == param_key(kFileParam)) {
      conn.source_name = string_value(value, at);
      have_file = true;
    } else if (key == kCodeKey) {
      code = &value;
    } else if (!read_user_param(key, value, at, conn.params)) {
      schema_error(at, "unexpected key in attached connector");
    }
  }
  if (!have_file) schema_error(where, "missing \"_param:__file__\"");
  if (code == nullptr) schema_error(where, "missing \"_code\"");
  read_code(*code, child_path(where, kCodeKey), conn);
  return conn;
}

PstLink read_link(const Json& obj, const std::string& where) {
  PstLink link;
  bool have_indent = false;
  const Json* attached = nullptr;
  std::string attached_key;
  for (const auto& [key, value] : obj.items()) {
    const auto at = child_path(where, key);
    if (key == param_key(kIndentParam)) {
      if (!value.is_number_unsigned() && !(value.is_number_integer() &&
                                           value.get<long long>() >= 0)) {
        schema_error(at, "indent must be a non-negative integer");
      }
      link.indent_levels = value.get<std::size_t>();
      have_indent = true;
    } else if (key.starts_with(kLinkPrefix)) {
      if (attached != nullptr) schema_error(at, "more than one link key");
      link.id = key.substr(kLinkPrefix.size());
      if (!is_identifier(link.id)) schema_error(at, "invalid link id");
      attached = &value;
      attached_key = at;
    } else if (!read_user_param(key, value, at, link.params)) {
      schema_error(at, "unexpected key in link object");
    }
  }
  if (!have_indent) schema_error(where, "missing \"_param:__indent__\"");
  if (attached == nullptr) schema_error(where, "missing \"_link:<id>\" key");
  if (!attached->is_array()) schema_error(attached_key, "expected an array");
  for (std::size_t i = 0; i < attached->size(); ++i) {
    link.attached.push_back(
        read_attached((*attached)[i], link.id, index_path(attached_key, i)));
  }
  return link;
}

void read_code(const Json& code, const std::string& where,
               PstConnector& conn) {
  if (!code.is_array()) schema_error(where, "\"_code\" must be an array");
  for (std::size_t i = 0; i < code.size(); ++i) {
    const auto& item = code[i];
    const auto at = index_path(where, i);
    if (item.is_string()) {
      conn.body.emplace_back(PstCode{item.get<std::string>()});
    } else if (item.is_object()) {
      conn.body.emplace_back(read_link(item, at));
    } else {
      schema_error(at, "code entries must be strings or link objects");
    }
  }
}

}  // namespace

Json to_json(const Pst& tree) {
  const auto& root = tree.root();
  Json inner = Json::object();
  for (const auto& p : root.params) inner[param_key(p.name)] = p.value;
  inner[std::string(kCodeKey)] = code_to_json(root);

  Json doc = Json::object();
  doc[param_key(kFileParam)] = root.source_name;
  doc[std::string(kConnectorPrefix) + root.id] = std::move(inner);
  return doc;
}

std::string to_json_string(const Pst& tree) {
  try {
    return to_json(tree).dump(2) + "\n";
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("cannot encode tree: ") +
                                       e.what());
  }
}

Pst from_json(const Json& doc, std::size_t indent_width) {
  const std::string where = "$";
  if (!doc.is_object()) schema_error(where, "document must be an object");
  PstConnector root;
  bool have_file = false;
  const Json* body = nullptr;
  std::string body_path;
  for (const auto& [key, value] : doc.items()) {
    const auto at = child_path(where, key);
    if (key == param_key(kFileParam)) {
      root.source_name = string_value(value, at);
      have_file = true;
    } else if (key.starts_with(kConnectorPrefix)) {
      if (body != nullptr) schema_error(at, "more than one root connector");
      root.id = key.substr(kConnectorPrefix.size());
      if (!is_identifier(root.id)) schema_error(at, "invalid connector id");
      body = &value;
      body_path = at;
    } else {
      schema_error(at, "unexpected key at document root");
    }
  }
  if (body == nullptr) schema_error(where, "missing \"_connector:<id>\" key");
  if (!have_file) schema_error(where, "missing \"_param:__file__\"");
  if (!body->is_object()) schema_error(body_path, "expected an object");

  const Json* code = nullptr;
  for (const auto& [key, value] : body->items()) {
    const auto at = child_path(body_path, key);
    if (key == kCodeKey) {
      code = &value;
    } else if (!read_user_param(key, value, at, root.params)) {
      schema_error(at, "unexpected key in connector");
    }
  }
  if (code == nullptr) schema_error(body_path, "missing \"_code\"");
  read_code(*code, child_path(body_path, kCodeKey), root);
  return Pst(std::move(root), indent_width);
}

Pst from_json_string(std::string_view text, std::size_t indent_width) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("invalid JSON: ") + e.what(),
                "$");
  }
  return from_json(doc, indent_width);
}

}  // namespace pstkit
