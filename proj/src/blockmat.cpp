#include "netsdp/blockmat.hpp"

#include <algorithm>
#include <cmath>

#include "netsdp/errors.hpp"

namespace netsdp {

Partition Partition::from_sizes(const std::vector<int>& sizes) {
  if (sizes.empty()) throw Error("Partition: empty size list");
  Partition p;
  p.sizes = sizes;
  p.offsets.resize(sizes.size() + 1);
  p.offsets[0] = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw Error("Partition: block sizes must be positive");
    p.offsets[i + 1] = p.offsets[i] + sizes[i];
  }
  return p;
}

BlockPattern::BlockPattern(Partition p, Graph g)
    : partition(std::move(p)), graph(std::move(g)) {
  if (graph.node_count() != partition.block_count())
    throw DimensionMismatchError(
        "BlockPattern: graph nodes and partition blocks disagree");
}

BlockSymMatrix::BlockSymMatrix(BlockPattern pattern)
    : pattern_(std::move(pattern)) {}

namespace {

bool nearly_symmetric(const Eigen::MatrixXd& B) {
  if (B.rows() != B.cols()) return false;
  const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
  return (B - B.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

}  // namespace

void BlockSymMatrix::set_block(int i, int j, const Eigen::MatrixXd& B) {
  const auto& part = pattern_.partition;
  if (i < 0 || j < 0 || i >= part.block_count() || j >= part.block_count())
    throw BadCliqueError("set_block: block index out of range");
  if (i != j && !pattern_.graph.has_edge(i, j))
    throw PatternMismatchError("set_block: position not in pattern");
  if (B.rows() != part.size(i) || B.cols() != part.size(j))
    throw DimensionMismatchError("set_block: block shape mismatch");
  if (i == j && !nearly_symmetric(B))
    throw Error("set_block: diagonal block must be symmetric");
  if (i <= j)
    blocks_[{i, j}] = B;
  else
    blocks_[{j, i}] = B.transpose();
}

bool BlockSymMatrix::has_block(int i, int j) const {
  return blocks_.count({std::min(i, j), std::max(i, j)}) != 0;
}

Eigen::MatrixXd BlockSymMatrix::block(int i, int j) const {
  const auto& part = pattern_.partition;
  if (i < 0 || j < 0 || i >= part.block_count() || j >= part.block_count())
    throw BadCliqueError("block: block index out of range");
  auto it = blocks_.find({std::min(i, j), std::max(i, j)});
  if (it == blocks_.end())
    return Eigen::MatrixXd::Zero(part.size(i), part.size(j));
  if (i <= j) return it->second;
  return it->second.transpose();
}

Eigen::MatrixXd BlockSymMatrix::dense() const {
  const auto& part = pattern_.partition;
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(part.total(), part.total());
  for (const auto& [key, B] : blocks_) {
    auto [i, j] = key;
    X.block(part.offset(i), part.offset(j), part.size(i), part.size(j)) = B;
    if (i != j)
      X.block(part.offset(j), part.offset(i), part.size(j), part.size(i)) =
          B.transpose();
  }
  return X;
}

BlockSymMatrix BlockSymMatrix::from_dense(const BlockPattern& pattern,
                                          const Eigen::MatrixXd& X,
                                          double tol) {
  const auto& part = pattern.partition;
  const int N = part.total();
  if (X.rows() != N || X.cols() != N)
    throw DimensionMismatchError("from_dense: matrix size mismatch");
  if (!nearly_symmetric(X)) throw Error("from_dense: matrix not symmetric");
  BlockSymMatrix M(pattern);
  const int n = part.block_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::MatrixXd B =
          X.block(part.offset(i), part.offset(j), part.size(i), part.size(j));
      const bool allowed = (i == j) || pattern.graph.has_edge(i, j);
      if (!allowed) {
        if (B.cwiseAbs().maxCoeff() > tol)
          throw PatternMismatchError(
              "from_dense: nonzero block outside pattern");
        continue;
      }
      if (i == j) B = 0.5 * (B + B.transpose());
      M.set_block(i, j, B);
    }
  }
  return M;
}

IndexMatrix::IndexMatrix(std::vector<int> clique, const Partition& partition)
    : clique_(std::move(clique)), partition_(partition) {
  if (clique_.empty()) throw BadCliqueError("IndexMatrix: empty clique");
  for (size_t k = 0; k < clique_.size(); ++k) {
    if (clique_[k] < 0 || clique_[k] >= partition_.block_count())
      throw BadCliqueError("IndexMatrix: node outside partition");
    if (k > 0 && clique_[k] <= clique_[k - 1])
      throw BadCliqueError("IndexMatrix: clique must be sorted and distinct");
  }
  for (int node : clique_)
    for (int r = 0; r < partition_.size(node); ++r)
      rows_.push_back(partition_.offset(node) + r);
}

Eigen::MatrixXd extract(const Eigen::MatrixXd& X, const IndexMatrix& C) {
  const int N = C.partition().total();
  if (X.rows() != N || X.cols() != N)
    throw DimensionMismatchError("extract: matrix size mismatch");
  const auto& rows = C.global_indices();
  const int q = C.row_dim();
  Eigen::MatrixXd Y(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) Y(a, b) = X(rows[a], rows[b]);
  return Y;
}

Eigen::MatrixXd extract(const BlockSymMatrix& X, const IndexMatrix& C) {
  const auto& part = X.pattern().partition;
  if (part.offsets != C.partition().offsets)
    throw DimensionMismatchError("extract: partition mismatch");
  const auto& nodes = C.clique();
  const int q = C.row_dim();
  Eigen::MatrixXd Y(q, q);
  int roff = 0;
  for (int a = 0; a < static_cast<int>(nodes.size()); ++a) {
    int coff = 0;
    for (int b = 0; b < static_cast<int>(nodes.size()); ++b) {
      Y.block(roff, coff, part.size(nodes[a]), part.size(nodes[b])) =
          X.block(nodes[a], nodes[b]);
      coff += part.size(nodes[b]);
    }
    roff += part.size(nodes[a]);
  }
  return Y;
}

BlockSymMatrix inflate(const Eigen::MatrixXd& Y, const IndexMatrix& C) {
  const auto& part = C.partition();
  const auto& nodes = C.clique();
  if (Y.rows() != C.row_dim() || Y.cols() != C.row_dim())
    throw DimensionMismatchError("inflate: part size mismatch");
  Graph g(part.block_count());
  for (size_t a = 0; a < nodes.size(); ++a)
    for (size_t b = a + 1; b < nodes.size(); ++b) g.add_edge(nodes[a], nodes[b]);
  BlockSymMatrix M(BlockPattern(part, g));
  int roff = 0;
  for (size_t a = 0; a < nodes.size(); ++a) {
    int coff = 0;
    for (size_t b = 0; b < nodes.size(); ++b) {
      if (nodes[a] <= nodes[b]) {
        Eigen::MatrixXd B =
            Y.block(roff, coff, part.size(nodes[a]), part.size(nodes[b]));
        if (a == b) B = 0.5 * (B + B.transpose());
        M.set_block(nodes[a], nodes[b], B);
      }
      coff += part.size(nodes[b]);
    }
    roff += part.size(nodes[a]);
  }
  return M;
}

void inflate_add(const Eigen::MatrixXd& Y, const IndexMatrix& C,
                 Eigen::MatrixXd& X) {
  const int N = C.partition().total();
  if (X.rows() != N || X.cols() != N || Y.rows() != C.row_dim() ||
      Y.cols() != C.row_dim())
    throw DimensionMismatchError("inflate_add: size mismatch");
  const auto& rows = C.global_indices();
  const int q = C.row_dim();
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) X(rows[a], rows[b]) += Y(a, b);
}

bool grone_completable(const BlockSymMatrix& X, const CliqueSet& cs) {
  if (!is_chordal(X.pattern().graph))
    throw NotChordalError("grone_completable: pattern is not chordal");
  for (const auto& c : cs.cliques) {
    IndexMatrix E(c, X.pattern().partition);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(extract(X, E));
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (lo < -1e-9 * std::max(1.0, hi)) return false;
  }
  return true;
}

BlockSymMatrix agler_compose(const std::vector<Eigen::MatrixXd>& parts,
                             const CliqueSet& cs, const Partition& partition) {
  if (parts.size() != static_cast<size_t>(cs.size()))
    throw DimensionMismatchError("agler_compose: one part per clique required");
  Graph g(partition.block_count());
  for (const auto& c : cs.cliques)
    for (size_t a = 0; a < c.size(); ++a)
      for (size_t b = a + 1; b < c.size(); ++b) g.add_edge(c[a], c[b]);
  // Accumulate block sums over all cliques, then store once.
  std::map<std::pair<int, int>, Eigen::MatrixXd> acc;
  for (int k = 0; k < cs.size(); ++k) {
    const auto& nodes = cs.cliques[k];
    IndexMatrix E(nodes, partition);
    const Eigen::MatrixXd& Y = parts[k];
    if (Y.rows() != E.row_dim() || Y.cols() != E.row_dim())
      throw DimensionMismatchError("agler_compose: part size mismatch");
    if (!((Y - Y.transpose()).cwiseAbs().maxCoeff() <=
          1e-12 * std::max(1.0, Y.cwiseAbs().maxCoeff())))
      throw Error("agler_compose: part not symmetric");
    int roff = 0;
    for (size_t a = 0; a < nodes.size(); ++a) {
      int coff = 0;
      for (size_t b = 0; b < nodes.size(); ++b) {
        if (nodes[a] <= nodes[b]) {
          Eigen::MatrixXd B = Y.block(roff, coff, partition.size(nodes[a]),
                                      partition.size(nodes[b]));
          auto key = std::make_pair(nodes[a], nodes[b]);
          auto it = acc.find(key);
          if (it == acc.end())
            acc.emplace(key, B);
          else
            it->second += B;
        }
        coff += partition.size(nodes[b]);
      }
      roff += partition.size(nodes[a]);
    }
  }
  BlockSymMatrix Z(BlockPattern(partition, g));
  for (auto& [key, B] : acc) {
    if (key.first == key.second) B = 0.5 * (B + B.transpose());
    Z.set_block(key.first, key.second, B);
  }
  return Z;
}

std::vector<Eigen::MatrixXd> agler_decompose(const BlockSymMatrix& Z,
                                             const CliqueTree& ct) {
  const auto& part = Z.pattern().partition;
  const auto& cliques = ct.cliques.cliques;
  const int p = static_cast<int>(cliques.size());
  const int n = part.block_count();

  // Every pattern edge must be covered by some clique, or the parts cannot
  // reproduce Z.
  {
    Graph covered(n);
    std::vector<bool> node_covered(n, false);
    for (const auto& c : cliques) {
      for (size_t a = 0; a < c.size(); ++a) {
        node_covered[c[a]] = true;
        for (size_t b = a + 1; b < c.size(); ++b) covered.add_edge(c[a], c[b]);
      }
    }
    if (!covered.is_supergraph_of(Z.pattern().graph) ||
        std::find(node_covered.begin(), node_covered.end(), false) !=
            node_covered.end())
      throw BadCliqueError("agler_decompose: cliques do not cover the pattern");
  }

  Eigen::MatrixXd M = Z.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (lo < -1e-9 * std::max(1.0, hi))
    throw NotDecomposableError("agler_decompose: matrix is not PSD");

  // Perturbation keeps every residual clique submatrix positive definite so
  // the Schur solves below are well posed. It is subtracted back out at the
  // end, attributed once per node, so the parts still sum to Z exactly; each
  // part is then bounded below by -delta * I.
  const double delta = 1e-10 + (lo < 0.0 ? -1.01 * lo : 0.0);
  M.diagonal().array() += delta;

  std::vector<IndexMatrix> selectors;
  selectors.reserve(p);
  for (const auto& c : cliques) selectors.emplace_back(c, part);

  // Forest bookkeeping: roots are the smallest clique index per component.
  std::vector<std::vector<int>> adj(p);
  for (size_t e = 0; e < ct.edges.size(); ++e) {
    adj[ct.edges[e].a].push_back(static_cast<int>(e));
    adj[ct.edges[e].b].push_back(static_cast<int>(e));
  }
  std::vector<int> comp(p, -1);
  std::vector<bool> is_root(p, false);
  for (int s = 0; s < p; ++s) {
    if (comp[s] != -1) continue;
    is_root[s] = true;  // first index reached in its component
    std::vector<int> stack{s};
    comp[s] = s;
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      for (int e : adj[k]) {
        int other = ct.edges[e].a == k ? ct.edges[e].b : ct.edges[e].a;
        if (comp[other] == -1) {
          comp[other] = s;
          stack.push_back(other);
        }
      }
    }
  }

  std::vector<bool> edge_alive(ct.edges.size(), true);
  std::vector<int> degree(p, 0);
  for (const auto& e : ct.edges) {
    ++degree[e.a];
    ++degree[e.b];
  }
  std::vector<bool> removed(p, false);
  std::vector<Eigen::MatrixXd> parts(p);
  std::vector<int> owner(n, -1);  // clique charged with a node's delta

  const int to_process = p - static_cast<int>(std::count(
                                 is_root.begin(), is_root.end(), true));
  for (int step = 0; step < to_process; ++step) {
    int k = -1;
    for (int c = 0; c < p; ++c)
      if (!removed[c] && !is_root[c] && degree[c] <= 1) {
        k = c;
        break;
      }
    if (k == -1)
      throw Error("agler_decompose: malformed clique tree");

    int live_edge = -1;
    for (int e : adj[k])
      if (edge_alive[e]) live_edge = e;
    const auto& sep = ct.edges[live_edge].separator;

    const auto& nodes = cliques[k];
    // Scalar positions of residual (clique-exclusive) rows vs separator rows
    // inside the clique-local ordering.
    std::vector<int> posR, posS;
    {
      int off = 0;
      for (int node : nodes) {
        const bool in_sep = std::binary_search(sep.begin(), sep.end(), node);
        for (int r = 0; r < part.size(node); ++r)
          (in_sep ? posS : posR).push_back(off + r);
        if (!in_sep) owner[node] = k;
        off += part.size(node);
      }
    }

    const Eigen::MatrixXd Y = extract(M, selectors[k]);
    const int q = static_cast<int>(posR.size() + posS.size());
    Eigen::MatrixXd A(posR.size(), posR.size());
    Eigen::MatrixXd B(posR.size(), posS.size());
    for (size_t a = 0; a < posR.size(); ++a) {
      for (size_t b = 0; b < posR.size(); ++b) A(a, b) = Y(posR[a], posR[b]);
      for (size_t b = 0; b < posS.size(); ++b) B(a, b) = Y(posR[a], posS[b]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
      throw NumericalError("agler_decompose: clique submatrix factorization failed");
    const Eigen::MatrixXd AinvB = llt.solve(B);
    const Eigen::MatrixXd schur = B.transpose() * AinvB;

    Eigen::MatrixXd Zk = Eigen::MatrixXd::Zero(q, q);
    for (size_t a = 0; a < posR.size(); ++a) {
      for (size_t b = 0; b < posR.size(); ++b) Zk(posR[a], posR[b]) = A(a, b);
      for (size_t b = 0; b < posS.size(); ++b) {
        Zk(posR[a], posS[b]) = B(a, b);
        Zk(posS[b], posR[a]) = B(a, b);
      }
    }
    for (size_t a = 0; a < posS.size(); ++a)
      for (size_t b = 0; b < posS.size(); ++b) Zk(posS[a], posS[b]) = schur(a, b);

    const auto& rows = selectors[k].global_indices();
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) M(rows[a], rows[b]) -= Zk(a, b);
    parts[k] = std::move(Zk);

    removed[k] = true;
    edge_alive[live_edge] = false;
    --degree[k];
    --degree[ct.edges[live_edge].a == k ? ct.edges[live_edge].b
                                        : ct.edges[live_edge].a];
  }

  for (int r = 0; r < p; ++r) {
    if (!is_root[r]) continue;
    parts[r] = extract(M, selectors[r]);
    for (int node : cliques[r])
      if (owner[node] == -1) owner[node] = r;
  }

  // Undo the diagonal perturbation, once per node, in its owning part.
  for (int v = 0; v < n; ++v) {
    const int k = owner[v];
    const auto& nodes = cliques[k];
    int off = 0;
    for (int node : nodes) {
      if (node == v) {
        for (int r = 0; r < part.size(v); ++r) parts[k](off + r, off + r) -= delta;
        break;
      }
      off += part.size(node);
    }
  }
  for (auto& Zk : parts) Zk = 0.5 * (Zk + Zk.transpose()).eval();
  return parts;
}

}  // namespace netsdp
