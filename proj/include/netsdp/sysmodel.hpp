#ifndef NETSDP_SYSMODEL_HPP
#define NETSDP_SYSMODEL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "netsdp/blockmat.hpp"
#include "netsdp/graph.hpp"

namespace netsdp {

// One node of the network: local dynamics
//   dx_i/dt = A x_i + (coupling terms) + B w_i,   y_i = C x_i + D w_i.
struct Subsystem {
  int alpha = 0;  // state dimension
  int m = 0;      // disturbance dimension
  int d = 0;      // output dimension
  Eigen::MatrixXd A;  // alpha x alpha
  Eigen::MatrixXd B;  // alpha x m
  Eigen::MatrixXd C;  // d x alpha
  Eigen::MatrixXd D;  // d x m
};

// Subsystems interacting over a directed graph. A directed edge (i, j)
// means subsystem i drives subsystem j, so the global state matrix has a
// nonzero block in row j, column i. Coupling blocks are keyed by matrix
// position: (i, j) -> A_ij of size alpha_i x alpha_j.
struct NetworkedSystem {
  std::vector<Subsystem> subsystems;
  std::vector<std::pair<int, int>> directed_edges;
  std::map<std::pair<int, int>, Eigen::MatrixXd> coupling_blocks;

  int node_count() const { return static_cast<int>(subsystems.size()); }
};

// Stacked state-space model: dx/dt = Ax + Bw, y = Cx + Dw with
// block-diagonal B, C, D.
struct GlobalSystem {
  Partition alpha;   // state blocks
  Partition m_part;  // disturbance blocks
  Partition d_part;  // output blocks
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::MatrixXd C;
  Eigen::MatrixXd D;
};

// Validates dimensions and the edge/coupling correspondence, then stacks
// the subsystem data into the global matrices.
GlobalSystem assemble(const NetworkedSystem& sys);

// Symmetric closure of the directed interaction edges, as the block pattern
// of A^T P + P A under block-diagonal P.
BlockPattern undirected_pattern(const NetworkedSystem& sys);

// Benchmark generator configuration (dimension ranges and stability margin).
struct ChainConfig {
  int alpha_min = 5;
  int alpha_max = 10;
  int io_min = 1;
  int io_max = 5;
  double shift_margin = 5.0;
};

// Bidirectionally coupled chain of n subsystems with random dimensions and
// entries, shifted to spectral abscissa -shift_margin. Deterministic given
// the seed; the draw order is documented in the implementation.
NetworkedSystem random_chain(int n, std::uint64_t seed,
                             const ChainConfig& config = {});

// Maximum real part over the eigenvalues of a (generally nonsymmetric)
// square matrix.
double spectral_abscissa(const Eigen::MatrixXd& A);

}  // namespace netsdp

#endif  // NETSDP_SYSMODEL_HPP
