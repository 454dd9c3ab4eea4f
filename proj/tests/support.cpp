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

#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace pstkit::testing {

std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(PSTKIT_FIXTURE_DIR) / relative;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

using Adj = std::vector<std::vector<std::uint32_t>>;

Adj successors(const Digraph& g) {
  Adj adj(g.n);
  for (auto [a, b] : g.edges) adj[a].push_back(b);
  return adj;
}

// Depth-first over simple paths; reports whether any path closes on itself.
bool closes_cycle(const Adj& adj, std::vector<char>& on_path,
                  std::uint32_t v) {
  on_path[v] = 1;
  for (auto w : adj[v]) {
    if (on_path[w] || closes_cycle(adj, on_path, w)) return true;
  }
  on_path[v] = 0;
  return false;
}

// Walks every path from v; records nodes on paths that end at `leaf` and
// whether some maximal path ends elsewhere.
bool walk(const Adj& adj, std::uint32_t v, std::uint32_t leaf,
          std::vector<std::uint32_t>& path, std::vector<char>& on_good,
          bool& bad_end) {
  path.push_back(v);
  bool reaches = false;
  if (adj[v].empty()) {
    reaches = v == leaf;
    if (!reaches) bad_end = true;
  }
  for (auto w : adj[v]) reaches = walk(adj, w, leaf, path, on_good, bad_end) || reaches;
  if (reaches) on_good[v] = 1;
  path.pop_back();
  return reaches;
}

}  // namespace

Verdict brute_force_verdict(const Digraph& g) {
  const auto adj = successors(g);
  Verdict v;
  v.acyclic = true;
  for (std::uint32_t s = 0; s < g.n && v.acyclic; ++s) {
    std::vector<char> on_path(g.n, 0);
    if (closes_cycle(adj, on_path, s)) v.acyclic = false;
  }
  std::vector<int> indeg(g.n, 0);
  for (auto [a, b] : g.edges) ++indeg[b];
  std::vector<std::uint32_t> sources, sinks;
  for (std::uint32_t x = 0; x < g.n; ++x) {
    if (indeg[x] == 0) sources.push_back(x);
    if (adj[x].empty()) sinks.push_back(x);
  }
  v.unique_root_and_leaf =
      sources.size() == 1 && sources[0] == 0 && sinks.size() == 1;
  if (v.acyclic && v.unique_root_and_leaf) {
    std::vector<std::uint32_t> path;
    std::vector<char> on_good(g.n, 0);
    bool bad_end = false;
    walk(adj, 0, sinks[0], path, on_good, bad_end);
    v.paths_ok = !bad_end && std::all_of(on_good.begin(), on_good.end(),
                                         [](char c) { return c != 0; });
  }
  return v;
}

Verdict verdict_from_report(const ValidationReport& r) {
  using K = Violation::Kind;
  Verdict v;
  v.acyclic = !r.has(K::Cycle);
  v.unique_root_and_leaf =
      !r.has(K::MultipleRoots) && !r.has(K::NoLeaf) && !r.has(K::MultipleLeaves);
  v.paths_ok = !r.has(K::Unreachable) && !r.has(K::DeadEnd);
  return v;
}

FlowGraph to_flow_graph(const Digraph& g) {
  FlowGraph fg;
  std::vector<Handle> h{fg.root()};
  for (std::uint32_t i = 1; i < g.n; ++i) {
    h.push_back(fg.add_node(
        NodeSpec::codegen("n" + std::to_string(i), Binding{"t", "c"})));
  }
  for (auto [a, b] : g.edges) fg.add_edge(h[a], h[b]);
  return fg;
}

void for_each_dag(std::uint32_t max_content, std::size_t max_edges,
                  const std::function<void(const Digraph&)>& visit) {
  for (std::uint32_t content = 0; content <= max_content; ++content) {
    const std::uint32_t n = content + 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
    // Enumerate subsets of `pairs` of size <= max_edges by recursion.
    Digraph g;
    g.n = n;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      visit(g);
      if (g.edges.size() == max_edges) return;
      for (std::size_t i = from; i < pairs.size(); ++i) {
        g.edges.push_back(pairs[i]);
        rec(i + 1);
        g.edges.pop_back();
      }
    };
    rec(0);
  }
}

void for_each_digraph(std::uint32_t n,
                      const std::function<void(const Digraph&)>& visit) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size());
       ++mask) {
    Digraph g;
    g.n = n;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1) g.edges.push_back(pairs[i]);
    }
    visit(g);
  }
}

Digraph random_valid_graph(std::mt19937& rng, std::uint32_t max_nodes) {
  std::uniform_int_distribution<std::uint32_t> size(2, max_nodes);
  const std::uint32_t n = size(rng);
  // Build in topological labels t = 0..n-1, then relabel.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> topo;
  std::bernoulli_distribution extra(0.3);
  for (std::uint32_t t = 1; t < n; ++t) {
    std::uniform_int_distribution<std::uint32_t> pick(0, t - 1);
    topo.emplace_back(pick(rng), t);
    for (std::uint32_t s = 0; s < t; ++s) {
      if (extra(rng)) topo.emplace_back(s, t);
    }
  }
  // Every sink other than the last node feeds the last node.
  std::vector<char> has_out(n, 0);
  for (auto [a, b] : topo) has_out[a] = 1;
  for (std::uint32_t t = 0; t + 1 < n; ++t) {
    if (!has_out[t]) topo.emplace_back(t, n - 1);
  }
  std::sort(topo.begin(), topo.end());
  topo.erase(std::unique(topo.begin(), topo.end()), topo.end());

  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin() + 1, label.end(), rng);  // root stays at 0
  Digraph g;
  g.n = n;
  for (auto [a, b] : topo) g.edges.emplace_back(label[a], label[b]);
  std::shuffle(g.edges.begin(), g.edges.end(), rng);
  return g;
}

std::vector<std::uint32_t> reference_schedule(const Digraph& g) {
  std::vector<char> done(g.n, 0);
  std::vector<std::uint32_t> order;
  while (order.size() < g.n) {
    bool progressed = false;
    for (std::uint32_t v = 0; v < g.n && !progressed; ++v) {
      if (done[v]) continue;
      bool ready = true;
      for (auto [a, b] : g.edges) {
        if (b == v && !done[a]) ready = false;
      }
      if (ready) {
        done[v] = 1;
        order.push_back(v);
        progressed = true;
      }
    }
    if (!progressed) break;  // cyclic input
  }
  return order;
}

namespace {

class TreeGen {
 public:
  explicit TreeGen(std::mt19937& rng) : rng_(rng) {}

  PstConnector connector(const std::string& id, int depth,
                         std::vector<std::string> scope) {
    PstConnector c;
    c.id = id;
    c.source_name = ident() + ".c";
    add_params(c.params, scope);
    const int items = uniform(0, 4);
    for (int i = 0; i < items; ++i) {
      if (depth < 3 && uniform(0, 3) == 0) {
        c.body.push_back(link(depth, scope));
      } else {
        c.body.push_back(PstCode{code_line(scope)});
      }
    }
    return c;
  }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  std::string ident() {
    static const std::string first = "abcdefghijklmnopqrstuvwxyz";
    static const std::string rest = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::string s(1, first[uniform(0, 25)]);
    const int len = uniform(0, 5);
    for (int i = 0; i < len; ++i) s += rest[uniform(0, 36)];
    return s;
  }

  // Free text: no ':' and no '$', so it can hold neither directive tokens
  // nor references.
  std::string text(int max_len) {
    static const std::string alphabet =
        "abcdefghijklmnopqrstuvwxyz ABCXYZ0123456789;,.(){}[]=+-*/<>&|!#\"'";
    std::string s;
    const int len = uniform(0, max_len);
    for (int i = 0; i < len; ++i) {
      s += alphabet[uniform(0, static_cast<int>(alphabet.size()) - 1)];
    }
    return s;
  }

  void add_params(std::vector<Param>& params, std::vector<std::string>& scope) {
    const int count = uniform(0, 3);
    for (int i = 0; i < count; ++i) {
      const auto name = ident();
      const bool taken = std::any_of(
          params.begin(), params.end(),
          [&](const Param& p) { return p.name == name; });
      if (taken) continue;
      params.push_back({name, text(8)});
      scope.push_back(name);
    }
  }

  std::string code_line(const std::vector<std::string>& scope) {
    std::string s(static_cast<std::size_t>(uniform(0, 6)), ' ');
    const int parts = uniform(0, 3);
    for (int i = 0; i < parts; ++i) {
      s += text(10);
      if (!scope.empty() && uniform(0, 1) == 0) {
        s += "${" + scope[uniform(0, static_cast<int>(scope.size()) - 1)] + "}";
      }
    }
    return s;
  }

  PstLink link(int depth, std::vector<std::string> scope) {
    PstLink l;
    l.id = ident();
    l.indent_levels = static_cast<std::size_t>(uniform(0, 3));
    add_params(l.params, scope);
    const int attached = uniform(0, 2);
    for (int i = 0; i < attached; ++i) {
      l.attached.push_back(connector(l.id, depth + 1, scope));
    }
    return l;
  }

  std::mt19937& rng_;
};

}  // namespace

Pst random_tree(std::mt19937& rng) {
  TreeGen gen(rng);
  std::uniform_int_distribution<int> width(1, 4);
  const std::size_t w = static_cast<std::size_t>(width(rng));
  return Pst(gen.connector("root", 0, {}), w);
}

}  // namespace pstkit::testing
