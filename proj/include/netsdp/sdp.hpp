#ifndef NETSDP_SDP_HPP
#define NETSDP_SDP_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "netsdp/blockmat.hpp"
#include "netsdp/graph.hpp"
#include "netsdp/sysmodel.hpp"

namespace netsdp {

using SparseSym = Eigen::SparseMatrix<double>;

// Block-diagonal ansatz for the Lyapunov variable P: one dense symmetric
// block per subsystem, sizes alpha_i. Scalar decision variables enumerate
// each block's upper triangle row by row, so a variable at off-diagonal
// position (a, b) carries weight 2 in trace inner products.
struct PPattern {
  Partition blocks;

  explicit PPattern(Partition blocks_);

  // sum alpha_i (alpha_i + 1) / 2
  int variable_count() const;
};

// Dual-form semidefinite program
//   maximize  <b, y>   subject to   Z + sum_i y_i A[i] = A0,   Z psd,
// where Z lives on the cone partition. Feasibility problems have b = 0.
struct SdpProblem {
  Partition cone;
  SparseSym A0;
  std::vector<SparseSym> A;
  Eigen::VectorXd b;

  int m() const { return static_cast<int>(A.size()); }
  int cone_dim() const { return cone.total(); }
};

// Consensus reformulation metadata: a chordal block pattern covering the
// aggregate support of the problem data, its maximal cliques, a clique
// tree, and one row selector per clique. The per-clique cone dimension is
// selectors[k].row_dim().
struct DecomposedSdp {
  SdpProblem base;
  BlockPattern pattern;
  CliqueSet cliques;
  CliqueTree tree;
  std::vector<IndexMatrix> selectors;

  int clique_count() const { return static_cast<int>(cliques.cliques.size()); }
};

// Symmetric closure of the off-diagonal block support of the state matrix:
// the pattern of A^T P + P A under block-diagonal P, read from the data.
Graph state_block_graph(const GlobalSystem& gs);

// Lyapunov feasibility with margin eps > 0:
//   Z = blkdiag(P, -(A^T P + P A)) - eps I  psd
// encoded as A0 = -eps I_2N, A_v = blkdiag(-W_v, A^T W_v + W_v A), b = 0,
// over the cone partition (alpha, alpha). Any feasible y certifies
// P >= eps I and A^T P + P A <= -eps I.
SdpProblem stability_sdp(const GlobalSystem& gs, const PPattern& pp,
                         double eps);

// Quadratic-performance bound via the observability inequality:
//   maximize -tr(B^T P B)  s.t.  blkdiag(P, -(A^T P + P A) - C^T C) psd.
// The squared norm bound is -objective. Requires D = 0.
SdpProblem h2_sdp(const GlobalSystem& gs, const PPattern& pp);

// Worst-case-gain bound (bounded-real inequality): variables (P vars, g),
//   maximize -g  s.t.  Z = blkdiag(P, -M(P, g)) psd,
// where M stacks (state, disturbance, output) rows:
//   M = [A^T P + P A,  P B,  C^T;  B^T P,  -g I,  D^T;  C,  D,  -g I].
// The norm bound is -objective = g at the optimum.
SdpProblem hinf_sdp(const GlobalSystem& gs, const PPattern& pp);

// Union of the block-level support of A0 and every A_i over `part`
// (off-diagonal blocks only; diagonal blocks are always allowed).
BlockPattern aggregate_pattern(const SdpProblem& p, const Partition& part);

// Structural pattern of M over the stacked partition
// (alpha_1..alpha_n, m_1..m_n, d_1..d_n): the chordally extended state
// pattern plus, for each subsystem i, the triangle {i, i+n, i+2n}.
// Also returns the predicted maximal cliques: the extended state cliques
// C_1..C_p plus the n triples, p + n in total with largest cardinality
// max{h, 3}. The prediction matches maximal_cliques on the built pattern
// whenever every C_k has cardinality >= 2; a singleton C_k (isolated
// state node) is absorbed by its triple in the actual graph.
std::pair<BlockPattern, CliqueSet> hinf_pattern(const GlobalSystem& gs,
                                                const PPattern& pp);

// Cone patterns matching the SDP layouts, ready for decompose(): the n
// P-blocks stay isolated nodes (each becomes its own small cone) and the
// certificate part carries the chordally extended structural pattern.
BlockPattern stability_cone_pattern(const GlobalSystem& gs);  // also for h2
BlockPattern hinf_cone_pattern(const GlobalSystem& gs);

// Validates that `pattern` covers the aggregate support of p, chordally
// extends it if needed, and attaches maximal cliques, a clique tree, and
// per-clique selectors. A complete (single-clique) pattern yields the
// identity reformulation.
DecomposedSdp decompose(const SdpProblem& p, const BlockPattern& pattern);

// Assembles the block-diagonal P encoded by the leading variable_count()
// entries of y.
Eigen::MatrixXd p_from_y(const PPattern& pp, const Eigen::VectorXd& y);

}  // namespace netsdp

#endif  // NETSDP_SDP_HPP
