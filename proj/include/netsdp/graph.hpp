#ifndef NETSDP_GRAPH_HPP
#define NETSDP_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace netsdp {

// Simple undirected graph on nodes 0..n-1, no self-loops.
// Stored both as an adjacency matrix (O(1) queries) and a sorted edge list.
class Graph {
 public:
  explicit Graph(int node_count);

  static Graph from_edges(int node_count,
                          const std::vector<std::pair<int, int>>& edges);

  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

  std::vector<int> neighbors(int v) const;
  int degree(int v) const;

  bool is_supergraph_of(const Graph& other) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
  }

 private:
  void check_node(int v) const;

  int n_;
  std::vector<std::uint8_t> adj_;  // row-major n x n, symmetric
  std::vector<std::pair<int, int>> edges_;  // u < v, kept sorted
};

// A perfect elimination ordering: order[k] is the k-th node eliminated.
struct EliminationOrdering {
  std::vector<int> order;
};

// Maximal cliques, each sorted ascending; the list is sorted
// lexicographically (equivalently by smallest member first).
struct CliqueSet {
  std::vector<std::vector<int>> cliques;

  int size() const { return static_cast<int>(cliques.size()); }
};

struct CliqueTreeEdge {
  int a = 0;
  int b = 0;                   // clique indices, a < b
  std::vector<int> separator;  // intersection of the two cliques, sorted
};

// Spanning forest of the clique intersection graph with maximum total
// separator cardinality. Carries the clique set it was built from.
struct CliqueTree {
  CliqueSet cliques;
  std::vector<CliqueTreeEdge> edges;
};

// Chordality test via maximum cardinality search. Returns a perfect
// elimination ordering when the graph is chordal, std::nullopt otherwise.
std::optional<EliminationOrdering> is_chordal(const Graph& g);

// Greedy minimum-degree chordal extension (ties broken by lowest node
// index). Returns the extended graph and the added fill edges.
std::pair<Graph, std::vector<std::pair<int, int>>> chordal_extension(
    const Graph& g);

// Maximal cliques of a chordal graph, read off a perfect elimination
// ordering. Throws NotChordalError for non-chordal inputs.
CliqueSet maximal_cliques(const Graph& g);

// Maximum-weight spanning forest of the clique intersection graph
// (weight = separator cardinality). For a connected chordal graph this
// is a tree satisfying the running-intersection property.
CliqueTree clique_tree(const CliqueSet& cs, const Graph& g);

}  // namespace netsdp

#endif  // NETSDP_GRAPH_HPP
