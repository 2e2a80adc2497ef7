#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

namespace oracles {

Eigen::MatrixXd random_sym(std::mt19937_64& rng, int dim, double scale) {
  Eigen::MatrixXd X(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      X(i, j) = uniform_range(rng, -scale, scale);
      X(j, i) = X(i, j);
    }
  return X;
}

Eigen::MatrixXd random_psd(std::mt19937_64& rng, int dim, double margin) {
  Eigen::MatrixXd G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = uniform_range(rng, -1.0, 1.0);
  return (G * G.transpose()) / dim +
         margin * Eigen::MatrixXd::Identity(dim, dim);
}

Eigen::MatrixXd psd_clip(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X);
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();
}

RandomPattern random_chordal_block_pattern(std::mt19937_64& rng, int max_nodes,
                                           int max_block, double edge_prob) {
  const int n = uniform_int(rng, 2, max_nodes);
  std::vector<int> sizes(n);
  for (int& s : sizes) s = uniform_int(rng, 1, max_block);
  netsdp::Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) < edge_prob) g.add_edge(u, v);
  auto [chordal, fill] = netsdp::chordal_extension(g);
  (void)fill;
  auto cliques = netsdp::maximal_cliques(chordal);
  auto tree = netsdp::clique_tree(cliques, chordal);
  return RandomPattern{
      netsdp::BlockPattern(netsdp::Partition::from_sizes(sizes), chordal),
      std::move(cliques), std::move(tree)};
}

bool completion_by_alternating_projections(const netsdp::BlockSymMatrix& X,
                                           int max_iters, double tol) {
  const auto& pattern = X.pattern();
  const auto& part = pattern.partition;
  const int n = part.block_count();
  Eigen::MatrixXd W = X.dense();

  auto impose_known = [&](Eigen::MatrixXd& M) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        if (i != j && !pattern.graph.has_edge(i, j)) continue;
        Eigen::MatrixXd B = X.block(i, j);
        M.block(part.offset(i), part.offset(j), part.size(i), part.size(j)) = B;
        if (i != j)
          M.block(part.offset(j), part.offset(i), part.size(j), part.size(i)) =
              B.transpose();
      }
  };

  for (int it = 0; it < max_iters; ++it) {
    W = psd_clip(W);
    impose_known(W);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(W);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (lo >= -tol * std::max(1.0, hi)) return true;
  }
  return false;
}

double h2_by_svec_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& C) {
  const int n = static_cast<int>(A.rows());
  std::vector<std::pair<int, int>> basis;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) basis.emplace_back(i, j);
  const int q = static_cast<int>(basis.size());

  Eigen::MatrixXd op(q, q);
  Eigen::VectorXd rhs(q);
  const Eigen::MatrixXd S = C.transpose() * C;
  for (int col = 0; col < q; ++col) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
    E(basis[col].first, basis[col].second) = 1.0;
    E(basis[col].second, basis[col].first) = 1.0;
    const Eigen::MatrixXd R = A.transpose() * E + E * A;
    for (int row = 0; row < q; ++row)
      op(row, col) = R(basis[row].first, basis[row].second);
  }
  for (int row = 0; row < q; ++row)
    rhs(row) = -S(basis[row].first, basis[row].second);

  const Eigen::VectorXd qvec = op.fullPivLu().solve(rhs);
  Eigen::MatrixXd Q(n, n);
  for (int k = 0; k < q; ++k) {
    Q(basis[k].first, basis[k].second) = qvec(k);
    Q(basis[k].second, basis[k].first) = qvec(k);
  }
  return std::sqrt(std::max(0.0, (B.transpose() * Q * B).trace()));
}

double gain_by_frequency_sweep(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& B,
                               const Eigen::MatrixXd& C,
                               const Eigen::MatrixXd& D, int points,
                               double w_lo, double w_hi) {
  const int n = static_cast<int>(A.rows());
  const Eigen::MatrixXcd Ac = A.cast<std::complex<double>>();
  const Eigen::MatrixXcd Bc = B.cast<std::complex<double>>();

  auto gain_at = [&](double w) {
    const Eigen::MatrixXcd resolvent =
        (std::complex<double>(0.0, w) * Eigen::MatrixXcd::Identity(n, n) - Ac)
            .partialPivLu()
            .solve(Bc);
    const Eigen::MatrixXcd G = C * resolvent + D;
    if (G.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(G).singularValues()(0);
  };

  double best = gain_at(0.0);
  const double step = std::log(w_hi / w_lo) / (points - 1);
  for (int k = 0; k < points; ++k)
    best = std::max(best, gain_at(w_lo * std::exp(step * k)));
  return best;
}

}  // namespace oracles
