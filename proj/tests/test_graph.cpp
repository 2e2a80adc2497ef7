#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "netsdp/errors.hpp"
#include "netsdp/graph.hpp"

using netsdp::Graph;

namespace {

// Exhaustive chordality oracle: a graph is chordal iff no node subset
// induces a cycle of length >= 4 (induced cycle = connected, all induced
// degrees exactly 2). Usable up to ~12 nodes.
bool brute_chordal(const Graph& g) {
  const int n = g.node_count();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < 4) continue;
    std::vector<int> nodes;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) nodes.push_back(v);
    bool degrees_ok = true;
    for (int v : nodes) {
      int d = 0;
      for (int u : nodes)
        if (u != v && g.has_edge(u, v)) ++d;
      if (d != 2) {
        degrees_ok = false;
        break;
      }
    }
    if (!degrees_ok) continue;
    // Connectivity within the subset.
    std::vector<int> stack{nodes[0]};
    std::set<int> seen{nodes[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : nodes)
        if (u != v && g.has_edge(u, v) && seen.insert(u).second)
          stack.push_back(u);
    }
    if (seen.size() == nodes.size()) return false;  // induced long cycle
  }
  return true;
}

// Full perfect-elimination check, independent of the library's candidate
// shortcut: every pair of later neighbors must be adjacent.
bool brute_peo(const Graph& g, const std::vector<int>& order) {
  const int n = g.node_count();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<int> pos(n, -1);
  for (int k = 0; k < n; ++k) {
    if (order[k] < 0 || order[k] >= n || pos[order[k]] != -1) return false;
    pos[order[k]] = k;
  }
  for (int v = 0; v < n; ++v) {
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pos[u] > pos[v]) later.push_back(u);
    for (size_t i = 0; i < later.size(); ++i)
      for (size_t j = i + 1; j < later.size(); ++j)
        if (!g.has_edge(later[i], later[j])) return false;
  }
  return true;
}

std::vector<std::vector<int>> brute_maximal_cliques(const Graph& g) {
  const int n = g.node_count();
  std::vector<unsigned> complete;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (!(mask & (1u << v))) continue;
      for (int u = v + 1; u < n && ok; ++u)
        if ((mask & (1u << u)) && !g.has_edge(u, v)) ok = false;
    }
    if (ok) complete.push_back(mask);
  }
  std::vector<std::vector<int>> out;
  for (unsigned m : complete) {
    bool maximal = true;
    for (unsigned other : complete)
      if (other != m && (other & m) == m) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    std::vector<int> c;
    for (int v = 0; v < n; ++v)
      if (m & (1u << v)) c.push_back(v);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Running-intersection property: for every node, the cliques containing it
// must induce a connected subtree of the forest.
bool running_intersection(const netsdp::CliqueTree& ct, int node_count) {
  for (int v = 0; v < node_count; ++v) {
    int with_v = 0;
    for (const auto& c : ct.cliques.cliques)
      with_v += std::binary_search(c.begin(), c.end(), v) ? 1 : 0;
    int edges_with_v = 0;
    for (const auto& e : ct.edges)
      edges_with_v +=
          std::binary_search(e.separator.begin(), e.separator.end(), v) ? 1 : 0;
    if (with_v > 0 && edges_with_v != with_v - 1) return false;
  }
  return true;
}

int component_count(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v))
        if (comp[u] == -1) {
          comp[u] = c;
          stack.push_back(u);
        }
    }
    ++c;
  }
  return c;
}

Graph graph_from_mask(int n, unsigned long long mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask & (1ull << bit)) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("exhaustive verification on all graphs up to six nodes") {
  long long chordal_count = 0;
  for (int n = 1; n <= 6; ++n) {
    const int slots = n * (n - 1) / 2;
    for (unsigned long long mask = 0; mask < (1ull << slots); ++mask) {
      Graph g = graph_from_mask(n, mask);
      const bool expect = brute_chordal(g);
      auto peo = netsdp::is_chordal(g);
      REQUIRE(peo.has_value() == expect);

      auto [ext, fill] = netsdp::chordal_extension(g);
      REQUIRE(netsdp::is_chordal(ext).has_value());
      REQUIRE(ext.is_supergraph_of(g));
      REQUIRE(static_cast<int>(fill.size()) + g.edge_count() ==
              ext.edge_count());

      if (!expect) continue;
      ++chordal_count;
      REQUIRE(brute_peo(g, peo->order));
      REQUIRE(fill.empty());
      REQUIRE(ext == g);

      auto cs = netsdp::maximal_cliques(g);
      REQUIRE(cs.cliques == brute_maximal_cliques(g));

      auto ct = netsdp::clique_tree(cs, g);
      REQUIRE(static_cast<int>(ct.edges.size()) ==
              cs.size() - component_count(g));
      REQUIRE(running_intersection(ct, n));
      for (const auto& e : ct.edges) {
        std::vector<int> sep;
        std::set_intersection(cs.cliques[e.a].begin(), cs.cliques[e.a].end(),
                              cs.cliques[e.b].begin(), cs.cliques[e.b].end(),
                              std::back_inserter(sep));
        REQUIRE(e.separator == sep);
      }
    }
  }
  // Labeled connected chordal graphs exist for every n, so the loop did work.
  CHECK(chordal_count > 1000);
}

TEST_CASE("five-node example: four-cycle breaks chordality, one fill edge") {
  Graph g = Graph::from_edges(
      5, {{0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 4}, {3, 4}});
  CHECK_FALSE(netsdp::is_chordal(g).has_value());

  auto [ext, fill] = netsdp::chordal_extension(g);
  CHECK(fill == std::vector<std::pair<int, int>>{{2, 3}});
  CHECK(netsdp::is_chordal(ext).has_value());

  auto cs = netsdp::maximal_cliques(ext);
  std::vector<std::vector<int>> want{{0, 2, 3}, {1, 2, 4}, {2, 3, 4}};
  CHECK(cs.cliques == want);

  auto ct = netsdp::clique_tree(cs, ext);
  REQUIRE(ct.edges.size() == 2);
  CHECK(ct.edges[0].a == 0);
  CHECK(ct.edges[0].b == 2);
  CHECK(ct.edges[0].separator == std::vector<int>{2, 3});
  CHECK(ct.edges[1].a == 1);
  CHECK(ct.edges[1].b == 2);
  CHECK(ct.edges[1].separator == std::vector<int>{2, 4});
}

TEST_CASE("path graphs: pair cliques and a path-shaped tree") {
  const int n = 8;
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  CHECK(netsdp::is_chordal(g).has_value());

  auto cs = netsdp::maximal_cliques(g);
  REQUIRE(cs.size() == n - 1);
  for (int i = 0; i + 1 < n; ++i)
    CHECK(cs.cliques[i] == std::vector<int>{i, i + 1});

  auto ct = netsdp::clique_tree(cs, g);
  REQUIRE(ct.edges.size() == static_cast<size_t>(n - 2));
  for (int i = 0; i + 2 < n; ++i) {
    CHECK(ct.edges[i].a == i);
    CHECK(ct.edges[i].b == i + 1);
    CHECK(ct.edges[i].separator == std::vector<int>{i + 1});
  }
}

TEST_CASE("complete graph collapses to a single clique") {
  const int n = 5;
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  auto cs = netsdp::maximal_cliques(g);
  REQUIRE(cs.size() == 1);
  CHECK(cs.cliques[0] == std::vector<int>{0, 1, 2, 3, 4});
  auto ct = netsdp::clique_tree(cs, g);
  CHECK(ct.edges.empty());
}

TEST_CASE("disconnected graphs yield a clique forest") {
  Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  auto cs = netsdp::maximal_cliques(g);
  REQUIRE(cs.size() == 2);
  auto ct = netsdp::clique_tree(cs, g);
  CHECK(ct.edges.empty());
  CHECK(running_intersection(ct, 6));
}

TEST_CASE("random graphs up to eight nodes: extension is chordal and minimal-looking") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 5ull);
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100ull < 35ull) g.add_edge(u, v);
    auto [ext, fill] = netsdp::chordal_extension(g);
    REQUIRE(netsdp::is_chordal(ext).has_value());
    REQUIRE(ext.is_supergraph_of(g));
    auto [ext2, fill2] = netsdp::chordal_extension(ext);
    REQUIRE(fill2.empty());
    REQUIRE(ext2 == ext);
  }
}

TEST_CASE("maximal_cliques rejects non-chordal input") {
  Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK_THROWS_AS(netsdp::maximal_cliques(c4), netsdp::NotChordalError);
}

TEST_CASE("graph basics") {
  Graph g(3);
  g.add_edge(2, 0);
  g.add_edge(0, 1);
  g.add_edge(1, 0);  // duplicate, ignored
  CHECK(g.edge_count() == 2);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(1, 2));
  CHECK(g.degree(0) == 2);
  CHECK(g.neighbors(0) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(g.add_edge(0, 0), netsdp::Error);
  CHECK_THROWS_AS(g.add_edge(0, 3), netsdp::Error);
  CHECK_THROWS_AS(Graph(0), netsdp::Error);

  Graph h(3);
  h.add_edge(0, 1);
  CHECK(g.is_supergraph_of(h));
  CHECK_FALSE(h.is_supergraph_of(g));
  CHECK_FALSE(g == h);
  h.add_edge(0, 2);
  CHECK(g == h);
}
