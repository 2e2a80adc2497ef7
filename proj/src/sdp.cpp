#include "netsdp/sdp.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "netsdp/errors.hpp"

namespace netsdp {

namespace {

using Triplet = Eigen::Triplet<double>;

// One scalar variable of the block-diagonal P: global position (a, b)
// with a <= b inside some diagonal block.
struct BasisEntry {
  int a = 0;
  int b = 0;
};

std::vector<BasisEntry> basis_entries(const PPattern& pp) {
  std::vector<BasisEntry> out;
  for (int i = 0; i < pp.blocks.block_count(); ++i) {
    const int off = pp.blocks.offset(i);
    for (int a = 0; a < pp.blocks.size(i); ++a)
      for (int b = a; b < pp.blocks.size(i); ++b)
        out.push_back({off + a, off + b});
  }
  return out;
}

using RowCache = std::vector<std::vector<std::pair<int, double>>>;

RowCache nonzero_rows(const Eigen::MatrixXd& X) {
  RowCache rows(static_cast<std::size_t>(X.rows()));
  for (int r = 0; r < X.rows(); ++r)
    for (int c = 0; c < X.cols(); ++c)
      if (X(r, c) != 0.0) rows[r].emplace_back(c, X(r, c));
  return rows;
}

void require_p_compatible(const GlobalSystem& gs, const PPattern& pp) {
  if (pp.blocks.sizes != gs.alpha.sizes)
    throw DimensionMismatchError(
        "p pattern blocks do not match the state partition");
}

Partition stacked(const std::vector<const Partition*>& parts) {
  std::vector<int> sizes;
  for (const Partition* p : parts)
    sizes.insert(sizes.end(), p->sizes.begin(), p->sizes.end());
  return Partition::from_sizes(sizes);
}

SparseSym from_triplets(int dim, const std::vector<Triplet>& t) {
  SparseSym s(dim, dim);
  s.setFromTriplets(t.begin(), t.end());
  s.makeCompressed();
  return s;
}

// -W_v at rows/cols [0, N). The off-diagonal basis matrix carries both
// symmetric entries, so <W_v, X> = 2 X_ab for a != b.
void add_neg_w(std::vector<Triplet>& t, const BasisEntry& e) {
  if (e.a == e.b) {
    t.emplace_back(e.a, e.a, -1.0);
  } else {
    t.emplace_back(e.a, e.b, -1.0);
    t.emplace_back(e.b, e.a, -1.0);
  }
}

// A^T W_v + W_v A at rows/cols [off, off + N). With r_x the x-th row of A,
// this is r_a e_b^T + e_b r_a^T + r_b e_a^T + e_a r_b^T (one pair for a = b;
// duplicate triplet positions accumulate).
void add_lyapunov(std::vector<Triplet>& t, const BasisEntry& e,
                  const RowCache& arows, int off) {
  for (const auto& [k, val] : arows[e.a]) {
    t.emplace_back(off + k, off + e.b, val);
    t.emplace_back(off + e.b, off + k, val);
  }
  if (e.a == e.b) return;
  for (const auto& [k, val] : arows[e.b]) {
    t.emplace_back(off + k, off + e.a, val);
    t.emplace_back(off + e.a, off + k, val);
  }
}

}  // namespace

PPattern::PPattern(Partition blocks_) : blocks(std::move(blocks_)) {}

int PPattern::variable_count() const {
  int m = 0;
  for (int s : blocks.sizes) m += s * (s + 1) / 2;
  return m;
}

Graph state_block_graph(const GlobalSystem& gs) {
  const int n = gs.alpha.block_count();
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto upper = gs.A.block(gs.alpha.offset(i), gs.alpha.offset(j),
                                    gs.alpha.size(i), gs.alpha.size(j));
      const auto lower = gs.A.block(gs.alpha.offset(j), gs.alpha.offset(i),
                                    gs.alpha.size(j), gs.alpha.size(i));
      if ((upper.array() != 0.0).any() || (lower.array() != 0.0).any())
        g.add_edge(i, j);
    }
  }
  return g;
}

SdpProblem stability_sdp(const GlobalSystem& gs, const PPattern& pp,
                         double eps) {
  require_p_compatible(gs, pp);
  if (!(eps > 0.0)) throw Error("stability margin must be positive");
  const int N = gs.alpha.total();
  const RowCache arows = nonzero_rows(gs.A);

  SdpProblem p;
  p.cone = stacked({&gs.alpha, &gs.alpha});
  {
    std::vector<Triplet> t;
    for (int r = 0; r < 2 * N; ++r) t.emplace_back(r, r, -eps);
    p.A0 = from_triplets(2 * N, t);
  }
  const auto entries = basis_entries(pp);
  p.A.reserve(entries.size());
  for (const BasisEntry& e : entries) {
    std::vector<Triplet> t;
    add_neg_w(t, e);
    add_lyapunov(t, e, arows, N);
    p.A.push_back(from_triplets(2 * N, t));
  }
  p.b = Eigen::VectorXd::Zero(p.m());
  return p;
}

SdpProblem h2_sdp(const GlobalSystem& gs, const PPattern& pp) {
  require_p_compatible(gs, pp);
  if (gs.D.size() != 0 && (gs.D.array() != 0.0).any())
    throw NonzeroDError("quadratic performance requires zero feedthrough");
  const int N = gs.alpha.total();
  const RowCache arows = nonzero_rows(gs.A);
  const Eigen::MatrixXd bbt = gs.B * gs.B.transpose();
  const Eigen::MatrixXd ctc = gs.C.transpose() * gs.C;

  SdpProblem p;
  p.cone = stacked({&gs.alpha, &gs.alpha});
  {
    std::vector<Triplet> t;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c)
        if (ctc(r, c) != 0.0) t.emplace_back(N + r, N + c, -ctc(r, c));
    p.A0 = from_triplets(2 * N, t);
  }
  const auto entries = basis_entries(pp);
  p.A.reserve(entries.size());
  p.b = Eigen::VectorXd::Zero(static_cast<int>(entries.size()));
  for (std::size_t v = 0; v < entries.size(); ++v) {
    const BasisEntry& e = entries[v];
    std::vector<Triplet> t;
    add_neg_w(t, e);
    add_lyapunov(t, e, arows, N);
    p.A.push_back(from_triplets(2 * N, t));
    p.b(static_cast<int>(v)) =
        -(e.a == e.b ? bbt(e.a, e.a) : 2.0 * bbt(e.a, e.b));
  }
  return p;
}

SdpProblem hinf_sdp(const GlobalSystem& gs, const PPattern& pp) {
  require_p_compatible(gs, pp);
  const int N = gs.alpha.total();
  const int M = gs.m_part.total();
  const int D = gs.d_part.total();
  const int dim = 2 * N + M + D;
  const RowCache arows = nonzero_rows(gs.A);
  const RowCache brows = nonzero_rows(gs.B);

  SdpProblem p;
  p.cone = stacked({&gs.alpha, &gs.alpha, &gs.m_part, &gs.d_part});
  {
    // Constant part: -C^T / -D^T against the output rows.
    std::vector<Triplet> t;
    for (int r = 0; r < D; ++r) {
      for (int x = 0; x < N; ++x) {
        if (gs.C(r, x) == 0.0) continue;
        t.emplace_back(N + x, 2 * N + M + r, -gs.C(r, x));
        t.emplace_back(2 * N + M + r, N + x, -gs.C(r, x));
      }
      for (int j = 0; j < M; ++j) {
        if (gs.D(r, j) == 0.0) continue;
        t.emplace_back(2 * N + j, 2 * N + M + r, -gs.D(r, j));
        t.emplace_back(2 * N + M + r, 2 * N + j, -gs.D(r, j));
      }
    }
    p.A0 = from_triplets(dim, t);
  }
  const auto entries = basis_entries(pp);
  p.A.reserve(entries.size() + 1);
  for (const BasisEntry& e : entries) {
    std::vector<Triplet> t;
    add_neg_w(t, e);
    add_lyapunov(t, e, arows, N);
    // W_v B at (state, disturbance) rows plus the transpose.
    for (const auto& [k, val] : brows[e.b]) {
      t.emplace_back(N + e.a, 2 * N + k, val);
      t.emplace_back(2 * N + k, N + e.a, val);
    }
    if (e.a != e.b) {
      for (const auto& [k, val] : brows[e.a]) {
        t.emplace_back(N + e.b, 2 * N + k, val);
        t.emplace_back(2 * N + k, N + e.b, val);
      }
    }
    p.A.push_back(from_triplets(dim, t));
  }
  {
    // The gain variable scales the identity on disturbance and output rows.
    std::vector<Triplet> t;
    for (int j = 0; j < M + D; ++j)
      t.emplace_back(2 * N + j, 2 * N + j, -1.0);
    p.A.push_back(from_triplets(dim, t));
  }
  p.b = Eigen::VectorXd::Zero(p.m());
  p.b(p.m() - 1) = -1.0;
  return p;
}

BlockPattern aggregate_pattern(const SdpProblem& p, const Partition& part) {
  if (part.total() != p.cone_dim())
    throw DimensionMismatchError("partition does not span the cone");
  std::vector<int> node_of(static_cast<std::size_t>(part.total()));
  for (int i = 0; i < part.block_count(); ++i)
    std::fill_n(node_of.begin() + part.offset(i), part.size(i), i);

  Graph g(part.block_count());
  const auto add_support = [&](const SparseSym& s) {
    for (int k = 0; k < s.outerSize(); ++k) {
      for (SparseSym::InnerIterator it(s, k); it; ++it) {
        if (it.value() == 0.0) continue;
        const int br = node_of[static_cast<std::size_t>(it.row())];
        const int bc = node_of[static_cast<std::size_t>(it.col())];
        if (br != bc) g.add_edge(br, bc);
      }
    }
  };
  add_support(p.A0);
  for (const SparseSym& s : p.A) add_support(s);
  return BlockPattern(part, g);
}

std::pair<BlockPattern, CliqueSet> hinf_pattern(const GlobalSystem& gs,
                                                const PPattern& pp) {
  require_p_compatible(gs, pp);
  const int n = gs.alpha.block_count();
  const Graph extended = chordal_extension(state_block_graph(gs)).first;
  const CliqueSet state_cliques = maximal_cliques(extended);

  Graph lifted(3 * n);
  for (const auto& [u, v] : extended.edges()) lifted.add_edge(u, v);
  for (int i = 0; i < n; ++i) {
    lifted.add_edge(i, i + n);
    lifted.add_edge(i, i + 2 * n);
    lifted.add_edge(i + n, i + 2 * n);
  }

  CliqueSet predicted = state_cliques;
  for (int i = 0; i < n; ++i)
    predicted.cliques.push_back({i, i + n, i + 2 * n});
  std::sort(predicted.cliques.begin(), predicted.cliques.end());

  return {BlockPattern(stacked({&gs.alpha, &gs.m_part, &gs.d_part}), lifted),
          predicted};
}

BlockPattern stability_cone_pattern(const GlobalSystem& gs) {
  const int n = gs.alpha.block_count();
  const Graph extended = chordal_extension(state_block_graph(gs)).first;
  Graph g(2 * n);
  for (const auto& [u, v] : extended.edges()) g.add_edge(n + u, n + v);
  return BlockPattern(stacked({&gs.alpha, &gs.alpha}), g);
}

BlockPattern hinf_cone_pattern(const GlobalSystem& gs) {
  const int n = gs.alpha.block_count();
  const auto lifted = hinf_pattern(gs, PPattern(gs.alpha)).first;
  Graph g(4 * n);
  for (const auto& [u, v] : lifted.graph.edges()) g.add_edge(n + u, n + v);
  return BlockPattern(stacked({&gs.alpha, &lifted.partition}), g);
}

DecomposedSdp decompose(const SdpProblem& p, const BlockPattern& pattern) {
  const BlockPattern agg = aggregate_pattern(p, pattern.partition);
  if (!pattern.graph.is_supergraph_of(agg.graph))
    throw PatternMismatchError("pattern does not cover the problem support");

  Graph work = pattern.graph;
  if (!is_chordal(work)) work = chordal_extension(work).first;

  CliqueSet cliques = maximal_cliques(work);
  CliqueTree tree = clique_tree(cliques, work);
  std::vector<IndexMatrix> selectors;
  selectors.reserve(cliques.cliques.size());
  for (const auto& c : cliques.cliques)
    selectors.emplace_back(c, pattern.partition);

  return DecomposedSdp{p, BlockPattern(pattern.partition, work),
                       std::move(cliques), std::move(tree),
                       std::move(selectors)};
}

Eigen::MatrixXd p_from_y(const PPattern& pp, const Eigen::VectorXd& y) {
  if (y.size() < pp.variable_count())
    throw DimensionMismatchError("coefficient vector shorter than the basis");
  const int N = pp.blocks.total();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
  int v = 0;
  for (int i = 0; i < pp.blocks.block_count(); ++i) {
    const int off = pp.blocks.offset(i);
    for (int a = 0; a < pp.blocks.size(i); ++a) {
      for (int b = a; b < pp.blocks.size(i); ++b) {
        P(off + a, off + b) = y(v);
        P(off + b, off + a) = y(v);
        ++v;
      }
    }
  }
  return P;
}

}  // namespace netsdp
