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

#include "pstkit/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "pstkit/error.hpp"

namespace pstkit {

namespace {

class Loader {
 public:
  Loader(const Manifest& m, std::string_view variant)
      : m_(m), variant_(variant) {}

  Recipe run() {
    const auto& doc = m_.doc;
    static const std::set<std::string> kKeys = {
        "templates", "parse_comment_style", "root", "nodes",
        "edges",     "render",              "variants"};
    for (const auto& [key, value] : doc.items()) {
      if (!kKeys.count(key)) fail("$." + key, "unknown manifest key");
    }
    load_templates();

    const auto& root = member(doc, "root", "$");
    recipe_.set_root(binding(root, "$.root"));
    if (doc.contains("render")) read_render(doc["render"]);

    const auto& nodes = member(doc, "nodes", "$");
    if (!nodes.is_array()) fail("$.nodes", "must be an array");
    const auto& edges = member(doc, "edges", "$");
    if (!edges.is_object()) fail("$.edges", "must be an object");

    std::set<std::string> declared;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto at = "$.nodes[" + std::to_string(i) + "]";
      const auto& decl = nodes[i];
      if (!decl.is_object()) fail(at, "node declaration must be an object");
      const auto name = text(decl, "name", at);
      if (name.empty() || name == "root") fail(at, "invalid node name");
      if (!declared.insert(name).second) {
        throw Error(Errc::DuplicateName, "node '" + name + "' declared twice",
                    where(at));
      }
      add_declared(decl, name, at, edges);
    }
    for (const auto& [key, value] : edges.items()) {
      if (!declared.count(key)) {
        fail("$.edges." + key, "edges given for undeclared node");
      }
    }
    return std::move(recipe_);
  }

 private:
  [[noreturn]] void fail(const std::string& at, const std::string& what) const {
    throw Error(Errc::SchemaError, what, where(at));
  }

  std::string where(const std::string& at) const {
    return m_.source_name + ":" + at;
  }

  const Json& member(const Json& obj, const char* key,
                     const std::string& at) const {
    if (!obj.is_object() || !obj.contains(key)) {
      fail(at, std::string("missing \"") + key + "\"");
    }
    return obj[key];
  }

  std::string text(const Json& obj, const char* key,
                   const std::string& at) const {
    const auto& v = member(obj, key, at);
    if (!v.is_string()) fail(at + "." + key, "must be a string");
    return v.get<std::string>();
  }

  std::string optional_text(const Json& obj, const char* key,
                            const std::string& at) const {
    return obj.contains(key) ? text(obj, key, at) : std::string();
  }

  Binding binding(const Json& obj, const std::string& at) const {
    Binding b{text(obj, "template", at), text(obj, "connector", at)};
    if (!recipe_.has_template(b.template_name)) {
      throw Error(Errc::UnknownTemplate,
                  "template alias '" + b.template_name + "' is not declared",
                  where(at + ".template"));
    }
    return b;
  }

  void load_templates() {
    const auto& templates = member(m_.doc, "templates", "$");
    if (!templates.is_object()) fail("$.templates", "must be an object");
    const VariantDecl* variant = nullptr;
    if (!variant_.empty()) {
      for (const auto& v : m_.variants) {
        if (v.name == variant_) variant = &v;
      }
      if (variant == nullptr) {
        fail("$.variants", "no variant named '" + std::string(variant_) + "'");
      }
      for (const auto& [alias, path] : variant->templates) {
        if (!templates.contains(alias)) {
          fail("$.variants", "variant overrides undeclared template '" +
                                 alias + "'");
        }
      }
    }
    std::optional<CommentStyle> style;
    if (m_.doc.contains("parse_comment_style")) {
      style = CommentStyle::from_flag(
          text(m_.doc, "parse_comment_style", "$"));
    }
    for (const auto& [alias, value] : templates.items()) {
      if (!value.is_string()) fail("$.templates." + alias, "must be a path");
      std::string rel = value.get<std::string>();
      if (variant != nullptr) {
        const auto it = variant->templates.find(alias);
        if (it != variant->templates.end()) rel = it->second;
      }
      const auto path = m_.base_dir / rel;
      if (!std::filesystem::is_regular_file(path)) {
        throw Error(Errc::UnknownTemplate,
                    "template file '" + path.string() + "' does not exist",
                    where("$.templates." + alias));
      }
      recipe_.register_template(alias, load_template(path, style));
    }
  }

  void read_render(const Json& r) {
    if (!r.is_object()) fail("$.render", "must be an object");
    if (r.contains("indent_width")) {
      const auto& w = r["indent_width"];
      if (!w.is_number_unsigned() || w.get<std::size_t>() == 0) {
        fail("$.render.indent_width", "must be a positive integer");
      }
      recipe_.render.indent_width = w.get<std::size_t>();
    }
    if (r.contains("comment_style")) {
      recipe_.render.comment_style =
          CommentStyle::from_flag(text(r, "comment_style", "$.render"));
    }
    if (r.contains("verbose")) {
      if (!r["verbose"].is_boolean()) fail("$.render.verbose", "must be bool");
      recipe_.render.verbose = r["verbose"].get<bool>();
    }
  }

  std::vector<Handle> deps_of(const std::string& name, const Json& edges,
                              const std::string& at) const {
    std::vector<Handle> deps;
    if (!edges.contains(name)) return deps;  // add() reports EmptyDeps
    const auto& list = edges[name];
    if (!list.is_array()) fail("$.edges." + name, "must be an array");
    for (const auto& d : list) {
      if (!d.is_string()) fail("$.edges." + name, "entries must be names");
      const auto dep = d.get<std::string>();
      if (dep == "root") {
        deps.push_back(recipe_.root());
        continue;
      }
      const auto it = handles_.find(dep);
      if (it == handles_.end()) {
        throw Error(Errc::UnknownDependency,
                    "node '" + name + "' depends on undeclared or later node '" +
                        dep + "'",
                    where(at));
      }
      deps.push_back(it->second);
    }
    return deps;
  }

  NodeSpec spec_from(const Json& decl, const std::string& name,
                     const std::string& at) {
    const auto kind = text(decl, "kind", at);
    if (kind == "codegen") {
      return NodeSpec::codegen(name, binding(decl, at));
    }
    if (kind == "null") return NodeSpec::null(name);
    if (kind == "begin") {
      const auto partner = text(decl, "partner", at);
      const auto family_name = optional_text(decl, "family", at);
      RegionFamily family = RegionFamily::Loop;
      if (family_name == "concurrent_data") {
        family = RegionFamily::ConcurrentData;
      } else if (!family_name.empty() && family_name != "loop") {
        fail(at + ".family", "must be \"loop\" or \"concurrent_data\"");
      }
      RegionPayload payload{binding(decl, at),
                            optional_text(decl, "link", at), std::nullopt};
      auto [begin, end] = loop_pair(family, std::move(payload), name, partner);
      pending_ends_.insert_or_assign(partner, std::make_pair(name, end));
      return begin;
    }
    if (kind == "end") {
      const auto partner = text(decl, "partner", at);
      NodeSpec end;
      if (const auto it = pending_ends_.find(name);
          it != pending_ends_.end()) {
        if (it->second.first != partner) {
          fail(at + ".partner", "begin '" + it->second.first +
                                    "' names this node as its partner");
        }
        end = it->second.second;
        pending_ends_.erase(it);
      } else {
        // No begin claims this end; validation reports it unmatched.
        end.kind = NodeKind::End;
        end.name = name;
        end.pair_id = 0;
      }
      if (decl.contains("template") || decl.contains("connector")) {
        end.action = binding(decl, at);
      }
      return end;
    }
    fail(at + ".kind", "unknown node kind '" + kind + "'");
  }

  void add_declared(const Json& decl, const std::string& name,
                    const std::string& at, const Json& edges) {
    const auto deps = deps_of(name, edges, at);
    if (text(decl, "kind", at) == "subgraph") {
      if (deps.size() != 1) {
        fail("$.edges." + name, "a subgraph has exactly one entry dependency");
      }
      const auto& inner = member(decl, "nodes", at);
      if (!inner.is_object()) fail(at + ".nodes", "must be an object");
      NodeBundle bundle;
      for (const auto& [key, sub] : inner.items()) {
        bundle.emplace(key, spec_from(sub, name + "." + key,
                                      at + ".nodes." + key));
      }
      handles_[name] =
          recipe_.apply_subgraph(text(decl, "function", at), deps.front(),
                                 bundle);
      return;
    }
    auto spec = spec_from(decl, name, at);
    try {
      handles_[name] = recipe_.add(std::move(spec), deps);
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), where(at));
    }
  }

  const Manifest& m_;
  std::string_view variant_;
  Recipe recipe_;
  std::map<std::string, Handle> handles_;
  std::map<std::string, std::pair<std::string, NodeSpec>> pending_ends_;
};

}  // namespace

Manifest Manifest::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read manifest", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.parent_path(), path.string());
}

Manifest Manifest::parse(std::string_view text,
                         std::filesystem::path base_dir,
                         std::string source_name) {
  Manifest m;
  m.base_dir = std::move(base_dir);
  m.source_name = std::move(source_name);
  try {
    m.doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SchemaError, std::string("invalid JSON: ") + e.what(),
                m.source_name);
  }
  if (!m.doc.is_object()) {
    throw Error(Errc::SchemaError, "manifest must be an object",
                m.source_name);
  }
  if (m.doc.contains("variants")) {
    const auto& vs = m.doc["variants"];
    if (!vs.is_array()) {
      throw Error(Errc::SchemaError, "\"variants\" must be an array",
                  m.source_name + ":$.variants");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto at = m.source_name + ":$.variants[" + std::to_string(i) + "]";
      const auto& v = vs[i];
      if (!v.is_object() || !v.contains("name") || !v["name"].is_string() ||
          !v.contains("output") || !v["output"].is_string()) {
        throw Error(Errc::SchemaError,
                    "variant needs string \"name\" and \"output\"", at);
      }
      VariantDecl decl{v["name"].get<std::string>(),
                       v["output"].get<std::string>(), {}};
      if (!names.insert(decl.name).second) {
        throw Error(Errc::DuplicateName,
                    "variant '" + decl.name + "' declared twice", at);
      }
      if (v.contains("templates")) {
        if (!v["templates"].is_object()) {
          throw Error(Errc::SchemaError, "\"templates\" must be an object", at);
        }
        for (const auto& [alias, path] : v["templates"].items()) {
          if (!path.is_string()) {
            throw Error(Errc::SchemaError, "template path must be a string",
                        at);
          }
          decl.templates[alias] = path.get<std::string>();
        }
      }
      m.variants.push_back(std::move(decl));
    }
  }
  return m;
}

std::vector<std::filesystem::path> Manifest::template_files(
    std::string_view variant) const {
  std::map<std::string, std::string> chosen;
  if (doc.contains("templates") && doc["templates"].is_object()) {
    for (const auto& [alias, value] : doc["templates"].items()) {
      if (value.is_string()) chosen[alias] = value.get<std::string>();
    }
  }
  for (const auto& v : variants) {
    if (v.name != variant) continue;
    for (const auto& [alias, rel] : v.templates) chosen[alias] = rel;
  }
  std::vector<std::filesystem::path> out;
  for (const auto& [alias, rel] : chosen) {
    out.push_back((base_dir / rel).lexically_normal());
  }
  return out;
}

std::vector<std::filesystem::path> Manifest::template_files() const {
  if (variants.empty()) return template_files("");
  std::vector<std::filesystem::path> out;
  for (const auto& v : variants) {
    for (const auto& p : template_files(v.name)) {
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
  }
  return out;
}

Recipe load_manifest(const Manifest& manifest, std::string_view variant) {
  return Loader(manifest, variant).run();
}

}  // namespace pstkit
