#include "netsdp/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "netsdp/errors.hpp"

namespace netsdp {

Graph::Graph(int node_count) : n_(node_count) {
  if (node_count <= 0) throw Error("Graph: node_count must be positive");
  adj_.assign(static_cast<size_t>(n_) * n_, 0);
}

Graph Graph::from_edges(int node_count,
                        const std::vector<std::pair<int, int>>& edges) {
  Graph g(node_count);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::check_node(int v) const {
  if (v < 0 || v >= n_) throw Error("Graph: node index out of range");
}

void Graph::add_edge(int u, int v) {
  check_node(u);
  check_node(v);
  if (u == v) throw Error("Graph: self-loops are not allowed");
  if (has_edge(u, v)) return;
  adj_[static_cast<size_t>(u) * n_ + v] = 1;
  adj_[static_cast<size_t>(v) * n_ + u] = 1;
  auto e = std::minmax(u, v);
  std::pair<int, int> p{e.first, e.second};
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), p), p);
}

bool Graph::has_edge(int u, int v) const {
  check_node(u);
  check_node(v);
  return adj_[static_cast<size_t>(u) * n_ + v] != 0;
}

std::vector<std::pair<int, int>> Graph::edges() const { return edges_; }

std::vector<int> Graph::neighbors(int v) const {
  check_node(v);
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (adj_[static_cast<size_t>(v) * n_ + u]) out.push_back(u);
  return out;
}

int Graph::degree(int v) const {
  check_node(v);
  int d = 0;
  for (int u = 0; u < n_; ++u) d += adj_[static_cast<size_t>(v) * n_ + u];
  return d;
}

bool Graph::is_supergraph_of(const Graph& other) const {
  if (n_ != other.n_) return false;
  for (size_t i = 0; i < adj_.size(); ++i)
    if (other.adj_[i] && !adj_[i]) return false;
  return true;
}

namespace {

// Maximum cardinality search. Visits nodes one at a time, always the node
// with the most already-visited neighbors (lowest index on ties). The
// reverse of the visit order is a perfect elimination ordering iff the
// graph is chordal.
std::vector<int> mcs_visit_order(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> weight(n, 0);
  std::vector<bool> visited(n, false);
  std::vector<int> order;
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (visited[v]) continue;
      if (best == -1 || weight[v] > weight[best]) best = v;
    }
    visited[best] = true;
    order.push_back(best);
    for (int u : g.neighbors(best))
      if (!visited[u]) ++weight[u];
  }
  return order;
}

// Checks that `order` (order[k] eliminated k-th) is a perfect elimination
// ordering: the later neighbors of each node must form a clique.
bool is_perfect_elimination(const Graph& g, const std::vector<int>& order) {
  const int n = g.node_count();
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  for (int k = 0; k < n; ++k) {
    const int v = order[k];
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pos[u] > k) later.push_back(u);
    if (later.empty()) continue;
    // It suffices to check the earliest later neighbor against the rest.
    int u = later[0];
    for (int w : later)
      if (pos[w] < pos[u]) u = w;
    for (int w : later)
      if (w != u && !g.has_edge(u, w)) return false;
  }
  return true;
}

}  // namespace

std::optional<EliminationOrdering> is_chordal(const Graph& g) {
  std::vector<int> visit = mcs_visit_order(g);
  std::vector<int> order(visit.rbegin(), visit.rend());
  if (!is_perfect_elimination(g, order)) return std::nullopt;
  return EliminationOrdering{std::move(order)};
}

std::pair<Graph, std::vector<std::pair<int, int>>> chordal_extension(
    const Graph& g) {
  const int n = g.node_count();
  // Work on a mutable adjacency copy; eliminate minimum-degree nodes and
  // connect their remaining neighborhoods.
  std::vector<std::set<int>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> eliminated(n, false);
  std::vector<std::pair<int, int>> fill;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      if (best == -1 || adj[v].size() < adj[best].size()) best = v;
    }
    std::vector<int> nb(adj[best].begin(), adj[best].end());
    for (size_t i = 0; i < nb.size(); ++i) {
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (!adj[nb[i]].count(nb[j])) {
          adj[nb[i]].insert(nb[j]);
          adj[nb[j]].insert(nb[i]);
          fill.emplace_back(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
        }
      }
    }
    for (int u : nb) adj[u].erase(best);
    adj[best].clear();
    eliminated[best] = true;
  }
  Graph extended = g;
  for (auto [u, v] : fill) extended.add_edge(u, v);
  std::sort(fill.begin(), fill.end());
  return {std::move(extended), std::move(fill)};
}

CliqueSet maximal_cliques(const Graph& g) {
  auto peo = is_chordal(g);
  if (!peo) throw NotChordalError("maximal_cliques: graph is not chordal");
  const int n = g.node_count();
  const auto& order = peo->order;
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;

  // Candidate cliques: each node together with its later neighbors in the
  // elimination ordering. Every maximal clique of a chordal graph appears
  // among these; drop candidates contained in another.
  std::vector<std::vector<int>> cand;
  cand.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int v = order[k];
    std::vector<int> c{v};
    for (int u : g.neighbors(v))
      if (pos[u] > k) c.push_back(u);
    std::sort(c.begin(), c.end());
    cand.push_back(std::move(c));
  }
  auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  CliqueSet cs;
  for (size_t i = 0; i < cand.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < cand.size() && maximal; ++j) {
      if (i == j) continue;
      if (cand[j].size() > cand[i].size() && contains(cand[j], cand[i]))
        maximal = false;
      // Equal-size duplicates cannot occur: candidate sets differ in their
      // earliest-eliminated member.
    }
    if (maximal) cs.cliques.push_back(cand[i]);
  }
  std::sort(cs.cliques.begin(), cs.cliques.end());
  return cs;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

CliqueTree clique_tree(const CliqueSet& cs, const Graph& g) {
  (void)g;  // the cliques fully determine the tree
  const int p = cs.size();
  struct Cand {
    int w;
    int a;
    int b;
    std::vector<int> sep;
  };
  std::vector<Cand> cands;
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      std::vector<int> sep;
      std::set_intersection(cs.cliques[a].begin(), cs.cliques[a].end(),
                            cs.cliques[b].begin(), cs.cliques[b].end(),
                            std::back_inserter(sep));
      if (!sep.empty())
        cands.push_back({static_cast<int>(sep.size()), a, b, std::move(sep)});
    }
  }
  // Kruskal on descending separator size; index order breaks ties, so the
  // result is deterministic.
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.w != y.w) return x.w > y.w;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  UnionFind uf(p);
  CliqueTree ct;
  ct.cliques = cs;
  for (auto& c : cands) {
    if (uf.unite(c.a, c.b))
      ct.edges.push_back({c.a, c.b, std::move(c.sep)});
  }
  std::sort(ct.edges.begin(), ct.edges.end(),
            [](const CliqueTreeEdge& x, const CliqueTreeEdge& y) {
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
  return ct;
}

}  // namespace netsdp
