#ifndef NETSDP_SOLVER_HPP
#define NETSDP_SOLVER_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "netsdp/sdp.hpp"

namespace netsdp {

struct AdmmSettings {
  double rho = 1.0;          // penalty, > 0
  double alpha_relax = 1.5;  // over-relaxation, in [1, 2)
  double tol = 1e-4;         // termination tolerance on scaled residuals
  int max_iter = 2000;
  int check_every = 1;  // residual check period
  int threads = 0;      // workers for clique projections, 0 = all
};

enum class SolveStatus { Solved, MaxIters, InfeasibleSuspected };

std::string to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIters;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> cone_vars;  // per-clique psd iterates
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  double wall_time = 0.0;                 // seconds, solve only
  std::vector<double> residual_history;  // max residual at each check
};

// Consensus operator splitting on the decomposed dual: per iteration one
// affine projection (a symmetric positive definite system factored once),
// independent per-clique PSD projections, and a scaled dual ascent step.
// Terminates when max(primal, dual) scaled residual <= tol. Throws
// NumericalError when the affine-step factorization fails.
SolveResult solve_decomposed(const DecomposedSdp& d,
                             const AdmmSettings& s = {});

// Same splitting on the undecomposed cone: a single PSD projection of the
// full dimension per iteration. Semantics identical to solve_decomposed
// with a one-clique decomposition.
SolveResult solve_dense(const SdpProblem& p, const AdmmSettings& s = {});

}  // namespace netsdp

#endif  // NETSDP_SOLVER_HPP
