#ifndef NETSDP_TEST_ORACLES_HPP
#define NETSDP_TEST_ORACLES_HPP

#include <Eigen/Dense>
#include <random>

#include "netsdp/blockmat.hpp"
#include "netsdp/graph.hpp"

// Independent reference implementations used by the unit tests and by the
// acceptance suite. Deliberately simple and slow; none of this code shares
// logic with the library.
namespace oracles {

// Deterministic draws independent of platform libstdc++ distributions.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

Eigen::MatrixXd random_sym(std::mt19937_64& rng, int dim, double scale = 1.0);

// G*G^T/dim + margin*I: strictly positive definite for margin > 0.
Eigen::MatrixXd random_psd(std::mt19937_64& rng, int dim, double margin);

// Nearest-PSD projection by eigenvalue clipping.
Eigen::MatrixXd psd_clip(const Eigen::MatrixXd& X);

// Random block pattern made chordal by extension, with its cliques and tree.
struct RandomPattern {
  netsdp::BlockPattern pattern;
  netsdp::CliqueSet cliques;
  netsdp::CliqueTree tree;
};
RandomPattern random_chordal_block_pattern(std::mt19937_64& rng, int max_nodes,
                                           int max_block,
                                           double edge_prob = 0.4);

// Alternating projections between the PSD cone and the affine set of
// matrices agreeing with X on its pattern (entries off the pattern are
// free). Returns true iff an approximately PSD completion is reached
// within max_iters: min eigenvalue >= -tol * max(1, spectral norm).
bool completion_by_alternating_projections(const netsdp::BlockSymMatrix& X,
                                           int max_iters, double tol);

// Quadratic norm by brute force: writes A^T Q + Q A = -C^T C as one dense
// linear system over the upper-triangular entries of Q and solves it with
// a pivoted LU. O(N^6); small systems only.
double h2_by_svec_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& C);

// Worst-case gain by brute force: max singular value of
// C (iw I - A)^{-1} B + D over `points` log-spaced frequencies in
// [w_lo, w_hi] plus w = 0. A grid maximum, so it never exceeds the norm.
double gain_by_frequency_sweep(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& B,
                               const Eigen::MatrixXd& C,
                               const Eigen::MatrixXd& D, int points,
                               double w_lo, double w_hi);

}  // namespace oracles

#endif  // NETSDP_TEST_ORACLES_HPP
