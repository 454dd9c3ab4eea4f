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

#include <gtest/gtest.h>

#include <array>

#include "pstkit/error.hpp"
#include "pstkit/manifest.hpp"
#include "support.hpp"

namespace pstkit {
namespace {

Manifest axpy_omp() {
  return Manifest::read(testing::fixture("axpy/axpy_omp.json"));
}

std::size_t count_kind(const FlowGraph& g, NodeKind kind) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.node(g.handle_at(i)).kind == kind) ++n;
  }
  return n;
}

TEST(DriverTest, AxpyLogFollowsTraversal) {
  auto recipe = load_manifest(axpy_omp(), "omp_incr1");
  recipe.seal();
  BuildContext ctx;
  build(recipe, ctx);
  const auto report = build_report(ctx);
  ASSERT_EQ(report.log.size(), 11u) << report.to_string();
  EXPECT_FALSE(report.failure);
  std::vector<std::string> order;
  traverse(recipe.graph(), [&](Handle, const NodeSpec& n) {
    if (n.kind != NodeKind::Root) order.push_back(n.name);
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(report.log[i].node, order[i]);
  }
  EXPECT_EQ(report.log[1].operation, Operation::OpenRegion);
  EXPECT_EQ(report.log[3].operation, Operation::CloseRegion);
  for (const auto& rec : report.log) {
    if (rec.operation != Operation::CloseRegion) {
      EXPECT_EQ(rec.links.size(), 1u) << rec.node;
    }
  }
  EXPECT_EQ(ctx.link_stack.size(), 1u);
  EXPECT_EQ(ctx.regions.size(), 2u);
}

TEST(DriverTest, LogSkipsRootAndNullNodes) {
  for (const char* name :
       {"spark/spark_telescoping.json", "spark/spark_nontelescoping.json"}) {
    auto recipe = load_manifest(Manifest::read(testing::fixture(name)));
    recipe.seal();
    BuildContext ctx;
    build(recipe, ctx);
    const auto& g = recipe.graph();
    EXPECT_EQ(ctx.emitted.size(),
              traverse(g).size() - 1 - count_kind(g, NodeKind::Null))
        << name;
  }
}

TEST(DriverTest, LoopBodyLandsInsideTheRegion) {
  auto recipe = load_manifest(axpy_omp(), "omp_incr1");
  const auto text = render(build(recipe), recipe.render);
  const auto loop = text.find("for (int rep = 0;");
  ASSERT_NE(loop, std::string::npos);
  const auto warm = text.find("axpy(length");
  const auto call = text.find("axpy(length", warm + 1);
  const auto elapsed = text.find("elapsed = (wall_time");
  EXPECT_LT(warm, loop);
  EXPECT_LT(loop, call);
  EXPECT_LT(call, elapsed);
  const auto column = [&](std::size_t pos) {
    const auto bol = text.rfind('\n', pos) + 1;
    return text.find_first_not_of(' ', bol) - bol;
  };
  EXPECT_EQ(column(call), column(loop) + recipe.render.indent_width);
  EXPECT_EQ(column(elapsed), column(loop));
  // The print node follows TimingEnd and so lands after the loop.
  EXPECT_LT(elapsed, text.find("printf", elapsed));
}

TEST(DriverTest, RootOnlyRecipeEqualsNewTree) {
  const auto m = Manifest::parse(
      R"({"templates": {"driver": "driver.c"},
          "root": {"template": "driver", "connector": "driver"},
          "nodes": [], "edges": {}})",
      testing::fixture("axpy"));
  auto recipe = load_manifest(m);
  const auto tree = build(recipe);
  const auto expect = new_tree(recipe.template_named("driver"), "driver");
  EXPECT_EQ(to_json_string(tree), to_json_string(expect));
}

TEST(DriverTest, NullNodesAreTransparent) {
  auto m = axpy_omp();
  const auto plain = [&] {
    auto r = load_manifest(m, "omp_incr1");
    return render(build(r), r.render);
  }();
  // Put a null node in front of every declared node.
  Json nodes = Json::array();
  Json edges = Json::object();
  for (const auto& decl : m.doc["nodes"]) {
    const auto name = decl["name"].get<std::string>();
    nodes.push_back({{"name", "Pre" + name}, {"kind", "null"}});
    nodes.push_back(decl);
    edges["Pre" + name] = m.doc["edges"][name];
    edges[name] = Json::array({"Pre" + name});
  }
  m.doc["nodes"] = nodes;
  m.doc["edges"] = edges;
  auto r = load_manifest(m, "omp_incr1");
  BuildContext ctx;
  const auto text = render(build(r, ctx), r.render);
  EXPECT_EQ(text, plain);
  EXPECT_EQ(ctx.emitted.size(), 11u);
}

TEST(DriverTest, FailedAttachRecordsPartialTree) {
  auto m = axpy_omp();
  m.doc["nodes"].push_back({{"name", "Stray"},
                            {"kind", "codegen"},
                            {"template", "kernel"},
                            {"connector", "kernel"}});
  m.doc["edges"]["Stray"] = Json::array({"Print"});
  auto recipe = load_manifest(m, "omp_incr1");
  BuildContext ctx;
  try {
    build(recipe, ctx);
    FAIL() << "build should fail";
  } catch (const Error& e) {
    // The kernel link sits inside the closed function region.
    EXPECT_EQ(e.code(), Errc::UnmatchedConnector);
  }
  ASSERT_TRUE(ctx.failure);
  EXPECT_EQ(ctx.failure->code, Errc::UnmatchedConnector);
  const auto partial = from_json_string(ctx.failure->partial_tree_json);
  const auto text = render(partial, RenderOptions{});
  EXPECT_NE(text.find("printf"), std::string::npos);
  EXPECT_EQ(ctx.emitted.back().node, "Stray");
  EXPECT_NE(build_report(ctx).to_string().find("failed: "), std::string::npos);
}

TEST(DriverTest, RegionOpeningAtTwoLinksIsAmbiguous) {
  const std::array<CommentStyle, 1> c = {CommentStyle::c()};
  Recipe r;
  r.register_template(
      "main", parse_template("//_connector:main\n//_link:body\n//_link:body\n",
                             "main.c", c));
  r.register_template(
      "loop", parse_template("//_connector:body\nfor (;;) {\n  //_link:inner\n}\n",
                             "loop.c", c));
  r.set_root(Binding{"main", "main"});
  auto [b, e] = loop_pair(RegionFamily::Loop, {Binding{"loop", "body"}, "", {}});
  r.add(e, r.add(b, r.root()));
  r.seal();
  BuildContext ctx;
  try {
    build(r, ctx);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::AmbiguousRegion);
  }
  ASSERT_TRUE(ctx.failure);
  EXPECT_EQ(ctx.emitted.back().links.size(), 2u);
}

TEST(DriverTest, InvalidGraphIsNotBuilt) {
  auto m = axpy_omp();
  m.doc["edges"]["Print"] = Json::array({"Call"});  // TimingEnd becomes a leaf
  auto r = load_manifest(m, "omp_incr1");
  try {
    build(r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotValidated);
  }
}

TEST(DriverTest, RenderHonoursSettings) {
  auto recipe = load_manifest(axpy_omp(), "omp_incr1");
  const auto tree = build(recipe);
  RenderSettings wide = recipe.render;
  wide.indent_width = 4;
  const auto text = render(tree, wide);
  EXPECT_NE(text.find("\n    for (int rep"), std::string::npos);
  RenderSettings verbose = recipe.render;
  verbose.verbose = true;
  EXPECT_NE(render(tree, verbose).find("_connector"), std::string::npos);
}

}  // namespace
}  // namespace pstkit
