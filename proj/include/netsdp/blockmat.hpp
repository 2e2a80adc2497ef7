#ifndef NETSDP_BLOCKMAT_HPP
#define NETSDP_BLOCKMAT_HPP

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "netsdp/graph.hpp"

namespace netsdp {

// Block sizes of a partitioned vector space: sizes alpha_1..alpha_n with
// scalar dimension N = sum alpha_i.
struct Partition {
  std::vector<int> sizes;
  std::vector<int> offsets;  // prefix sums, offsets.size() == n + 1

  static Partition from_sizes(const std::vector<int>& sizes);

  int block_count() const { return static_cast<int>(sizes.size()); }
  int total() const { return offsets.back(); }
  int size(int i) const { return sizes[i]; }
  int offset(int i) const { return offsets[i]; }
};

// Block sparsity pattern: which off-diagonal block positions may be nonzero.
// Diagonal blocks are always allowed.
struct BlockPattern {
  Partition partition;
  Graph graph;  // over block indices 0..n-1

  BlockPattern(Partition p, Graph g);
};

// Symmetric matrix stored as its upper-triangular blocks on an allowed
// pattern. The lower triangle is implied by symmetry.
class BlockSymMatrix {
 public:
  explicit BlockSymMatrix(BlockPattern pattern);

  const BlockPattern& pattern() const { return pattern_; }
  int dim() const { return pattern_.partition.total(); }

  // Accepts either orientation; stores the (min,max) block. Diagonal blocks
  // must be symmetric.
  void set_block(int i, int j, const Eigen::MatrixXd& B);
  bool has_block(int i, int j) const;
  Eigen::MatrixXd block(int i, int j) const;  // zero when absent

  Eigen::MatrixXd dense() const;

  // Reads the allowed blocks out of a dense symmetric matrix. Entries of
  // magnitude > tol outside the pattern raise PatternMismatch.
  static BlockSymMatrix from_dense(const BlockPattern& pattern,
                                   const Eigen::MatrixXd& X, double tol = 0.0);

 private:
  BlockPattern pattern_;
  std::map<std::pair<int, int>, Eigen::MatrixXd> blocks_;
};

// Row selector for a clique: picks the scalar rows of the clique's blocks
// in ascending node order.
class IndexMatrix {
 public:
  IndexMatrix(std::vector<int> clique, const Partition& partition);

  const std::vector<int>& clique() const { return clique_; }
  const Partition& partition() const { return partition_; }
  int row_dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<int>& global_indices() const { return rows_; }

 private:
  std::vector<int> clique_;
  Partition partition_;
  std::vector<int> rows_;
};

// Principal submatrix on the clique's block rows and columns.
Eigen::MatrixXd extract(const Eigen::MatrixXd& X, const IndexMatrix& C);
Eigen::MatrixXd extract(const BlockSymMatrix& X, const IndexMatrix& C);

// Embeds a clique-sized symmetric matrix into the full space; all other
// blocks are zero.
BlockSymMatrix inflate(const Eigen::MatrixXd& Y, const IndexMatrix& C);

// X += (inflate of Y), accumulating into a dense matrix.
void inflate_add(const Eigen::MatrixXd& Y, const IndexMatrix& C,
                 Eigen::MatrixXd& X);

// PSD-completability test for a chordal block pattern: X has a positive
// semidefinite completion iff every maximal-clique submatrix is PSD
// (eigenvalues >= -1e-9 * max(1, norm) per clique).
bool grone_completable(const BlockSymMatrix& X, const CliqueSet& cs);

// Z = sum over cliques of inflated parts. PSD parts give a PSD result.
BlockSymMatrix agler_compose(const std::vector<Eigen::MatrixXd>& parts,
                             const CliqueSet& cs, const Partition& partition);

// Constructive converse for PSD Z with chordal pattern: splits Z into
// per-clique parts with agler_compose(parts) == Z exactly and every part
// bounded below by a perturbation on the order of the PSD tolerance.
// Works leaf-to-root over the clique tree with Schur-complement corrections
// on separators. Throws NotDecomposable when Z is not PSD within tolerance.
std::vector<Eigen::MatrixXd> agler_decompose(const BlockSymMatrix& Z,
                                             const CliqueTree& ct);

}  // namespace netsdp

#endif  // NETSDP_BLOCKMAT_HPP
