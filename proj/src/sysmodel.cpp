#include "netsdp/sysmodel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "netsdp/errors.hpp"

namespace netsdp {

namespace {

void validate(const NetworkedSystem& sys) {
  const int n = sys.node_count();
  if (n == 0) throw DimensionMismatchError("system has no subsystems");
  for (int i = 0; i < n; ++i) {
    const Subsystem& s = sys.subsystems[i];
    if (s.alpha < 1 || s.m < 1 || s.d < 1)
      throw DimensionMismatchError("subsystem dimensions must be positive");
    if (s.A.rows() != s.alpha || s.A.cols() != s.alpha ||
        s.B.rows() != s.alpha || s.B.cols() != s.m || s.C.rows() != s.d ||
        s.C.cols() != s.alpha || s.D.rows() != s.d || s.D.cols() != s.m)
      throw DimensionMismatchError("subsystem matrix shape mismatch");
    if (!s.A.allFinite() || !s.B.allFinite() || !s.C.allFinite() ||
        !s.D.allFinite())
      throw DimensionMismatchError("subsystem matrices must be finite");
  }
  std::set<std::pair<int, int>> edges;
  for (auto [i, j] : sys.directed_edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw DimensionMismatchError("directed edge endpoint out of range");
    if (i == j)
      throw DimensionMismatchError("self-influence lives in the diagonal block");
    if (!edges.insert({i, j}).second)
      throw DimensionMismatchError("duplicate directed edge");
  }
  // Coupling block (i, j) is the effect of j's state on i: it must exist
  // exactly when the directed edge (j, i) does.
  std::set<std::pair<int, int>> expected;
  for (auto [i, j] : edges) expected.insert({j, i});
  std::set<std::pair<int, int>> present;
  for (const auto& [key, blk] : sys.coupling_blocks) {
    present.insert(key);
    auto [i, j] = key;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw DimensionMismatchError("coupling block position out of range");
    if (blk.rows() != sys.subsystems[i].alpha ||
        blk.cols() != sys.subsystems[j].alpha)
      throw DimensionMismatchError("coupling block shape mismatch");
    if (!blk.allFinite())
      throw DimensionMismatchError("coupling block must be finite");
  }
  if (present != expected)
    throw DimensionMismatchError(
        "coupling blocks and directed edges do not correspond");
}

}  // namespace

GlobalSystem assemble(const NetworkedSystem& sys) {
  validate(sys);
  const int n = sys.node_count();
  std::vector<int> alphas(n), ms(n), ds(n);
  for (int i = 0; i < n; ++i) {
    alphas[i] = sys.subsystems[i].alpha;
    ms[i] = sys.subsystems[i].m;
    ds[i] = sys.subsystems[i].d;
  }
  GlobalSystem gs{Partition::from_sizes(alphas), Partition::from_sizes(ms),
                  Partition::from_sizes(ds), {}, {}, {}, {}};
  const int N = gs.alpha.total();
  const int M = gs.m_part.total();
  const int D = gs.d_part.total();
  gs.A = Eigen::MatrixXd::Zero(N, N);
  gs.B = Eigen::MatrixXd::Zero(N, M);
  gs.C = Eigen::MatrixXd::Zero(D, N);
  gs.D = Eigen::MatrixXd::Zero(D, M);
  for (int i = 0; i < n; ++i) {
    const Subsystem& s = sys.subsystems[i];
    gs.A.block(gs.alpha.offset(i), gs.alpha.offset(i), s.alpha, s.alpha) = s.A;
    gs.B.block(gs.alpha.offset(i), gs.m_part.offset(i), s.alpha, s.m) = s.B;
    gs.C.block(gs.d_part.offset(i), gs.alpha.offset(i), s.d, s.alpha) = s.C;
    gs.D.block(gs.d_part.offset(i), gs.m_part.offset(i), s.d, s.m) = s.D;
  }
  for (const auto& [key, blk] : sys.coupling_blocks) {
    auto [i, j] = key;
    gs.A.block(gs.alpha.offset(i), gs.alpha.offset(j), blk.rows(),
               blk.cols()) = blk;
  }
  return gs;
}

BlockPattern undirected_pattern(const NetworkedSystem& sys) {
  validate(sys);
  const int n = sys.node_count();
  std::vector<int> alphas(n);
  for (int i = 0; i < n; ++i) alphas[i] = sys.subsystems[i].alpha;
  Graph g(n);
  for (auto [i, j] : sys.directed_edges) g.add_edge(i, j);
  return BlockPattern(Partition::from_sizes(alphas), g);
}

namespace {

// Platform-independent draws from a seeded mt19937_64: integers by modulo,
// doubles from the top 53 bits.
int draw_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double draw_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

Eigen::MatrixXd draw_matrix(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXd X(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) X(r, c) = draw_unit(rng);
  return X;
}

}  // namespace

NetworkedSystem random_chain(int n, std::uint64_t seed,
                             const ChainConfig& config) {
  if (n < 1) throw Error("random_chain: n must be positive");
  std::mt19937_64 rng(seed);
  NetworkedSystem sys;
  sys.subsystems.resize(n);
  // Draw order: all dimensions first (alpha_i, m_i, d_i per subsystem),
  // then local matrices A, B, C, D per subsystem (row-major), then coupling
  // pairs A_{i,i+1}, A_{i+1,i} along the chain.
  for (int i = 0; i < n; ++i) {
    sys.subsystems[i].alpha = draw_int(rng, config.alpha_min, config.alpha_max);
    sys.subsystems[i].m = draw_int(rng, config.io_min, config.io_max);
    sys.subsystems[i].d = draw_int(rng, config.io_min, config.io_max);
  }
  for (int i = 0; i < n; ++i) {
    Subsystem& s = sys.subsystems[i];
    s.A = draw_matrix(rng, s.alpha, s.alpha);
    s.B = draw_matrix(rng, s.alpha, s.m);
    s.C = draw_matrix(rng, s.d, s.alpha);
    s.D = draw_matrix(rng, s.d, s.m);
  }
  for (int i = 0; i + 1 < n; ++i) {
    sys.directed_edges.emplace_back(i, i + 1);
    sys.directed_edges.emplace_back(i + 1, i);
    sys.coupling_blocks[{i, i + 1}] = draw_matrix(
        rng, sys.subsystems[i].alpha, sys.subsystems[i + 1].alpha);
    sys.coupling_blocks[{i + 1, i}] = draw_matrix(
        rng, sys.subsystems[i + 1].alpha, sys.subsystems[i].alpha);
  }
  std::sort(sys.directed_edges.begin(), sys.directed_edges.end());

  // Stabilize: A := A - (lambda_max + margin) I, applied to the diagonal
  // blocks so the coupling pattern is untouched.
  const double lmax = spectral_abscissa(assemble(sys).A);
  for (int i = 0; i < n; ++i) {
    Subsystem& s = sys.subsystems[i];
    s.A -= (lmax + config.shift_margin) *
           Eigen::MatrixXd::Identity(s.alpha, s.alpha);
  }
  return sys;
}

double spectral_abscissa(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw DimensionMismatchError("spectral_abscissa: square matrix required");
  if (!A.allFinite())
    throw DimensionMismatchError("spectral_abscissa: matrix must be finite");
  Eigen::EigenSolver<Eigen::MatrixXd> eig(A, /*computeEigenvectors=*/false);
  if (eig.info() != Eigen::Success)
    throw ConvergenceFailureError("spectral_abscissa: eigensolver failed");
  return eig.eigenvalues().real().maxCoeff();
}

}  // namespace netsdp
