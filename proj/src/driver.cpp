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

#include "pstkit/driver.hpp"

#include <algorithm>

#include "pstkit/pst_json.hpp"

namespace pstkit {

std::string_view to_string(Operation op) noexcept {
  switch (op) {
    case Operation::Attach:
      return "attach";
    case Operation::OpenRegion:
      return "open";
    case Operation::CloseRegion:
      return "close";
  }
  return "?";
}

namespace {

TreePath child(const TreePath& base, std::size_t a, std::size_t b) {
  TreePath p = base;
  p.push_back(a);
  p.push_back(b);
  return p;
}

class Driver {
 public:
  Driver(const Recipe& recipe, BuildContext& ctx) : recipe_(recipe), ctx_(ctx) {}

  Pst run(const Template& root_template, std::string_view root_connector) {
    const auto& graph = recipe_.graph();
    const auto report = graph.validate();
    if (!report.ok()) {
      std::string msg = "recipe graph is invalid:";
      for (const auto& v : report.violations) msg += " " + v.message + ";";
      msg.pop_back();
      throw Error(Errc::NotValidated, msg);
    }
    ctx_ = BuildContext{};
    ctx_.tree = new_tree(root_template, root_connector,
                         recipe_.render.indent_width);
    ctx_.link_stack.push_back({graph.root(), {}});
    try {
      traverse(graph, [&](Handle h, const NodeSpec& n) { visit(h, n); });
      if (ctx_.link_stack.size() != 1) {
        throw Error(Errc::UnbalancedBuild,
                    std::to_string(ctx_.link_stack.size() - 1) +
                        " region(s) still open after the last node");
      }
    } catch (const Error& e) {
      ctx_.failure = BuildFailure{e.code(), e.what(),
                                  to_json_string(ctx_.tree)};
      throw;
    }
    return ctx_.tree;
  }

 private:
  void visit(Handle h, const NodeSpec& n) {
    switch (n.kind) {
      case NodeKind::Root:
      case NodeKind::Null:
        return;
      case NodeKind::CodeGen:
        visit_codegen(n);
        return;
      case NodeKind::Begin:
        visit_begin(h, n);
        return;
      case NodeKind::End:
        visit_end(n);
        return;
    }
  }

  VisitRecord& record(const NodeSpec& n, Operation op) {
    ctx_.emitted.push_back({n.name, op, {}});
    return ctx_.emitted.back();
  }

  bool is_region(const TreePath& p) const {
    return std::find(ctx_.regions.begin(), ctx_.regions.end(), p) !=
           ctx_.regions.end();
  }

  void collect(const TreePath& conn_path, const std::string& id,
               std::vector<TreePath>& out) const {
    const auto& conn = ctx_.tree.connector_at(conn_path);
    for (std::size_t i = 0; i < conn.body.size(); ++i) {
      const auto* link = std::get_if<PstLink>(&conn.body[i]);
      if (link == nullptr) continue;
      TreePath link_path = conn_path;
      link_path.push_back(i);
      if (link->id == id) out.push_back(link_path);
      for (std::size_t j = 0; j < link->attached.size(); ++j) {
        const auto sub = child(conn_path, i, j);
        if (!is_region(sub)) collect(sub, id, out);
      }
    }
  }

  std::vector<TreePath> resolve(const std::string& id) const {
    for (auto f = ctx_.link_stack.rbegin(); f != ctx_.link_stack.rend(); ++f) {
      std::vector<TreePath> found;
      collect(f->region, id, found);
      if (!found.empty()) return found;
    }
    return {};
  }

  std::vector<TreePath> attach_at_resolved(const NodeSpec& n,
                                           const Binding& b,
                                           VisitRecord& rec) {
    const auto& section = recipe_.section_for(b);
    const auto& tpl = recipe_.template_named(b.template_name);
    const auto sites = resolve(section.id);
    if (sites.empty()) {
      throw Error(Errc::UnmatchedConnector,
                  "node '" + n.name + "': no link '" + section.id +
                      "' is reachable from the current context",
                  tpl.source_name + ":" + std::to_string(section.source_line));
    }
    std::vector<TreePath> attached;
    for (const auto& site : sites) {
      rec.links.push_back(ctx_.tree.describe(site));
      attached.push_back(
          attach_section(ctx_.tree, site, section, tpl.source_name));
    }
    return attached;
  }

  void visit_codegen(const NodeSpec& n) {
    auto& rec = record(n, Operation::Attach);
    if (n.action) attach_at_resolved(n, *n.action, rec);
  }

  void visit_begin(Handle h, const NodeSpec& n) {
    auto& rec = record(n, Operation::OpenRegion);
    if (!n.action) {
      throw Error(Errc::AmbiguousRegion,
                  "begin node '" + n.name + "' has no region section");
    }
    const auto placed = attach_at_resolved(n, *n.action, rec);
    if (placed.size() != 1) {
      throw Error(Errc::AmbiguousRegion,
                  "begin node '" + n.name + "' matched " +
                      std::to_string(placed.size()) + " links; a region "
                      "must open at exactly one");
    }
    const auto& region = ctx_.tree.connector_at(placed.front());
    std::size_t interior = 0;
    for (const auto& item : region.body) {
      const auto* link = std::get_if<PstLink>(&item);
      if (link && (n.interior_link.empty() || link->id == n.interior_link)) {
        ++interior;
      }
    }
    if (interior != 1) {
      throw Error(Errc::AmbiguousRegion,
                  "begin node '" + n.name + "' needs exactly one interior "
                  "link, found " + std::to_string(interior));
    }
    ctx_.regions.push_back(placed.front());
    ctx_.link_stack.push_back({h, placed.front()});
  }

  void visit_end(const NodeSpec& n) {
    auto& rec = record(n, Operation::CloseRegion);
    if (ctx_.link_stack.size() <= 1) {
      throw Error(Errc::ContextUnderflow,
                  "end node '" + n.name + "' has no open region");
    }
    ctx_.link_stack.pop_back();
    if (n.action) attach_at_resolved(n, *n.action, rec);
  }

  const Recipe& recipe_;
  BuildContext& ctx_;
};

const Template& root_template_of(const Recipe& recipe) {
  const auto& b = recipe.root_binding();
  if (!b) throw Error(Errc::SchemaError, "recipe has no root binding");
  return recipe.template_named(b->template_name);
}

}  // namespace

Pst build(const Recipe& recipe, const Template& root_template,
          std::string_view root_connector, BuildContext& ctx) {
  return Driver(recipe, ctx).run(root_template, root_connector);
}

Pst build(const Recipe& recipe, const Template& root_template,
          std::string_view root_connector) {
  BuildContext ctx;
  return build(recipe, root_template, root_connector, ctx);
}

Pst build(const Recipe& recipe, BuildContext& ctx) {
  const auto& tpl = root_template_of(recipe);
  return build(recipe, tpl, recipe.root_binding()->connector, ctx);
}

Pst build(const Recipe& recipe) {
  BuildContext ctx;
  return build(recipe, ctx);
}

std::string BuildReport::to_string() const {
  std::string out;
  for (const auto& r : log) {
    out += r.node;
    out += ' ';
    out += pstkit::to_string(r.operation);
    for (const auto& l : r.links) out += ' ' + l;
    out += '\n';
  }
  if (failure) out += "failed: " + failure->what + '\n';
  return out;
}

BuildReport build_report(const BuildContext& ctx) {
  return BuildReport{ctx.emitted, ctx.failure};
}

std::string render(const Pst& tree, const RenderSettings& settings) {
  RenderOptions opts;
  opts.verbose = settings.verbose;
  opts.indent_width = settings.indent_width;
  if (settings.comment_style) opts.comment_style = *settings.comment_style;
  return render(tree, opts);
}

}  // namespace pstkit
