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

#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>

#include "pstkit/cfg.hpp"
#include "pstkit/driver.hpp"
#include "pstkit/error.hpp"
#include "pstkit/manifest.hpp"
#include "pstkit/metrics.hpp"
#include "pstkit/pst.hpp"
#include "pstkit/pst_json.hpp"
#include "pstkit/recipe.hpp"
#include "pstkit/template.hpp"

namespace pstkit::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  bool verbose_trace = false;
  std::string comment_style;
  std::size_t indent_width = 2;
  bool indent_given = false;
  bool strict = false;
  bool banner = false;
};

// Failure already reported on stderr; carries the exit code.
struct Exit {
  int code;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Io:
      return kIo;
    case Errc::SchemaError:
    case Errc::UnknownTemplate:
    case Errc::UnknownDependency:
    case Errc::UnknownSubgraph:
    case Errc::DuplicateName:
      return kSchema;
    default:
      return kFindings;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read file", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a temporary file so readers never see partial output.
void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp =
      path.string() + ".tmp" + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write file", path.string());
    out << text;
    out.flush();
    if (!out) throw Error(Errc::Io, "write failed", path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Errc::Io, "cannot replace file", path.string());
  }
}

class Runner {
 public:
  Runner(const Globals& g, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err) {}

  std::optional<CommentStyle> parse_style() const {
    if (g_.comment_style.empty()) return std::nullopt;
    return CommentStyle::from_flag(g_.comment_style);
  }

  // Render token: the flag, else the first template's language.
  CommentStyle render_style(const fs::path& first) const {
    if (auto s = parse_style()) return *s;
    return styles_for_path(first).front();
  }

  std::string with_banner(const std::string& text,
                          const CommentStyle& style) const {
    if (!g_.banner) return text;
    return style.line_token +
           " Generated by pstkit from templates; edit those instead.\n" + text;
  }

  void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
      out_ << text;
    } else {
      write_atomic(output, text);
    }
  }

  void report_findings(const std::vector<Finding>& findings) {
    bool fatal = false;
    for (auto f : findings) {
      if (g_.strict) f.severity = Severity::Error;
      fatal = fatal || f.severity == Severity::Error;
      err_ << f.to_string() << "\n";
    }
    if (fatal) throw Exit{kFindings};
  }

  int validate(const std::vector<std::string>& files) {
    int code = kOk;
    for (const auto& file : files) {
      try {
        const auto tpl = load_template(file, parse_style());
        out_ << file << ": ok, " << tpl.sections.size() << " connector(s), "
             << count_template_lines(tpl) << " code line(s)\n";
      } catch (const Error& e) {
        err_ << "error: " << e.what() << "\n";
        code = std::max(code, exit_code_for(e.code()));
      }
    }
    return code;
  }

  Pst compose_tree(const std::string& root, const std::string& connector,
                   const std::vector<std::string>& more) {
    const auto style = parse_style();
    Pst tree = new_tree(load_template(root, style), connector, g_.indent_width);
    for (const auto& file : more) attach(tree, load_template(file, style));
    return tree;
  }

  std::string render_tree(const Pst& tree, const CommentStyle& style) {
    report_findings(verify(tree));
    RenderOptions opts{g_.verbose_trace, style, g_.indent_width};
    return with_banner(pstkit::render(tree, opts), style);
  }

  int compose(const std::string& root, const std::string& connector,
              const std::vector<std::string>& more,
              const std::string& output) {
    const auto tree = compose_tree(root, connector, more);
    emit(render_tree(tree, render_style(root)), output);
    return kOk;
  }

  int dump(const std::string& root, const std::string& connector,
           const std::vector<std::string>& more, const std::string& output) {
    emit(to_json_string(compose_tree(root, connector, more)), output);
    return kOk;
  }

  int render_json(const std::string& input, const std::string& output) {
    const auto tree = from_json_string(read_file(input), g_.indent_width);
    const auto root_name = tree.root().source_name;
    emit(render_tree(tree, render_style(root_name)), output);
    return kOk;
  }

  int graph(const std::string& manifest_path, const std::string& variant,
            const std::string& dot) {
    const auto manifest = Manifest::read(manifest_path);
    const auto recipe = load_manifest(manifest, variant);
    const auto report = recipe.graph().validate();
    for (const auto& v : report.violations) {
      err_ << manifest_path << ": error: " << to_string(v.kind) << ": "
           << v.message << "\n";
    }
    if (!dot.empty()) emit(to_dot(recipe.graph()), dot);
    if (!report.ok()) return kFindings;
    out_ << manifest_path << ": ok, " << recipe.graph().size()
         << " node(s), " << recipe.graph().edges().size() << " edge(s)\n";
    return kOk;
  }

  RenderSettings settings_for(const Recipe& recipe) const {
    RenderSettings s = recipe.render;
    if (g_.verbose_trace) s.verbose = true;
    if (g_.indent_given) s.indent_width = g_.indent_width;
    if (auto style = parse_style()) s.comment_style = *style;
    if (!s.comment_style) {
      const auto& root = recipe.template_named(recipe.root_binding()->template_name);
      s.comment_style = styles_for_path(root.source_name).front();
    }
    return s;
  }

  // Builds and renders one variant (or the base recipe when empty).
  struct Rendered {
    std::string text;
    std::vector<Finding> findings;
  };

  Rendered build_one(const Manifest& manifest, const std::string& variant,
                     bool verbose_allowed) const {
    auto recipe = load_manifest(manifest, variant);
    recipe.seal();
    const auto tree = build(recipe);
    auto settings = settings_for(recipe);
    if (!verbose_allowed) settings.verbose = false;
    Rendered r{{}, verify(tree)};
    if (has_errors(r.findings)) return r;
    r.text = pstkit::render(tree, settings);
    if (g_.banner && verbose_allowed) {
      r.text = with_banner(r.text, *settings.comment_style);
    }
    return r;
  }

  int build_manifest(const std::string& manifest_path,
                     const std::string& variant, const std::string& output) {
    const auto manifest = Manifest::read(manifest_path);
    if (!variant.empty() || manifest.variants.empty()) {
      auto r = build_one(manifest, variant, true);
      report_findings(r.findings);
      emit(r.text, output);
      return kOk;
    }
    // Variants are independent builds; render them concurrently.
    std::vector<std::future<Rendered>> jobs;
    for (const auto& v : manifest.variants) {
      jobs.push_back(std::async(std::launch::async, [&, name = v.name] {
        return build_one(manifest, name, true);
      }));
    }
    const fs::path dir = output.empty() ? fs::path(".") : fs::path(output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) {
      throw Error(Errc::Io, "output directory unavailable", dir.string());
    }
    std::vector<Rendered> results;
    for (auto& job : jobs) results.push_back(job.get());
    for (std::size_t i = 0; i < results.size(); ++i) {
      report_findings(results[i].findings);
      const auto path = dir / manifest.variants[i].output;
      write_atomic(path, results[i].text);
      out_ << path.string() << "\n";
    }
    return kOk;
  }

  struct ManifestStats {
    std::vector<fs::path> templates;
    std::size_t generated = 0;
  };

  ManifestStats stats_manifest(const std::string& manifest_path) const {
    const auto manifest = Manifest::read(manifest_path);
    ManifestStats st{manifest.template_files(), 0};
    if (manifest.variants.empty()) {
      st.generated = count_generated_lines(build_one(manifest, "", false).text);
    } else {
      for (const auto& v : manifest.variants) {
        st.generated +=
            count_generated_lines(build_one(manifest, v.name, false).text);
      }
    }
    return st;
  }

  // Manifests may force a parse style; files are otherwise read by
  // extension.
  std::size_t count_files(const std::vector<fs::path>& files,
                          const std::optional<CommentStyle>& style) const {
    std::size_t n = 0;
    for (const auto& f : files) n += count_template_lines(load_template(f, style));
    return n;
  }

  int stats(const std::vector<std::string>& inputs,
            const std::vector<std::string>& generated) {
    std::vector<ReductionReport> rows;
    if (generated.empty()) {
      std::vector<fs::path> all;
      std::size_t total = 0;
      for (const auto& m : inputs) {
        const auto st = stats_manifest(m);
        const auto doc = Manifest::read(m).doc;
        std::optional<CommentStyle> style;
        if (doc.contains("parse_comment_style")) {
          style = CommentStyle::from_flag(
              doc["parse_comment_style"].get<std::string>());
        }
        rows.push_back(make_report(fs::path(m).stem().string(),
                                   count_files(st.templates, style),
                                   st.generated));
        for (const auto& t : st.templates) {
          if (std::find(all.begin(), all.end(), t) == all.end()) {
            all.push_back(t);
          }
        }
        total += st.generated;
      }
      if (inputs.size() > 1) {
        rows.push_back(make_report("total", count_files(all, parse_style()),
                                   total));
      }
    } else {
      std::vector<Template> templates;
      for (const auto& t : inputs) {
        templates.push_back(load_template(t, parse_style()));
      }
      std::size_t lines = 0;
      for (const auto& g : generated) {
        lines += count_generated_lines(read_file(g));
      }
      rows.push_back(
          make_report("templates", count_template_lines(templates), lines));
    }
    out_ << format_table(rows);
    return kOk;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Compose annotated source templates into generated code."};
  app.name("pstkit");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_flag("--verbose-trace", g.verbose_trace,
               "Render connector and link tags as comment lines");
  app.add_option("--comment-style", g.comment_style,
                 "Directive comment token: c, fortran, or a literal token");
  auto* indent = app.add_option("--indent-width", g.indent_width,
                                "Spaces per indentation level")
                     ->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "Treat warnings as errors");
  app.add_flag("--banner", g.banner, "Prefix outputs with a generated-file note");

  std::vector<std::string> files, more, generated;
  std::string root, connector, output, manifest, variant, dot, input;
  bool json = false, check = false;

  auto* validate = app.add_subcommand("validate", "Parse templates and report");
  validate->add_option("templates", files)->required();

  auto add_compose_args = [&](CLI::App* sub) {
    sub->add_option("root", root, "Root template")->required();
    sub->add_option("connector", connector, "Root connector id")->required();
    sub->add_option("templates", more, "Templates attached in order");
    sub->add_option("-o,--output", output, "Output file (default stdout)");
  };
  auto* compose = app.add_subcommand("compose", "Compose templates and render");
  add_compose_args(compose);
  auto* dump = app.add_subcommand("dump", "Compose templates and print the tree");
  add_compose_args(dump);
  dump->add_flag("--json", json, "JSON tree format")->required();

  auto* render = app.add_subcommand("render", "Render a JSON tree");
  render->add_option("tree", input, "Tree JSON file")->required();
  render->add_option("-o,--output", output, "Output file (default stdout)");

  auto* graph = app.add_subcommand("graph", "Validate a recipe graph");
  graph->add_option("manifest", manifest)->required();
  graph->add_flag("--check", check, "Validate the graph")->required();
  graph->add_option("--dot", dot, "Write Graphviz text to a file or -");
  graph->add_option("--variant", variant);

  auto* build_cmd = app.add_subcommand("build", "Build sources from a recipe");
  build_cmd->add_option("manifest", manifest)->required();
  build_cmd->add_option("--variant", variant, "Build only this variant");
  build_cmd->add_option(
      "-o,--output", output,
      "Output file, or directory when building every variant");

  auto* stats = app.add_subcommand("stats", "Report code reduction");
  stats->add_option("inputs", files, "Manifests, or templates with --generated")
      ->required();
  stats->add_option("--generated", generated, "Generated source files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFindings;
  }
  g.indent_given = indent->count() > 0;

  Runner r(g, out, err);
  try {
    if (*validate) return r.validate(files);
    if (*compose) return r.compose(root, connector, more, output);
    if (*dump) return r.dump(root, connector, more, output);
    if (*render) return r.render_json(input, output);
    if (*graph) return r.graph(manifest, variant, dot);
    if (*build_cmd) return r.build_manifest(manifest, variant, output);
    if (*stats) return r.stats(files, generated);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  }
  return kFindings;
}

}  // namespace pstkit::cli
