#ifndef NETSDP_ANALYSIS_HPP
#define NETSDP_ANALYSIS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "netsdp/solver.hpp"
#include "netsdp/sysmodel.hpp"

namespace netsdp {

// How an analysis run drives the first-order solver. Unless `rho` is set,
// the penalty is chosen per problem family and solver path: feasibility
// programs behave well at 1.0, while the performance programs sit on the
// cone boundary at their optimum and need a smaller penalty to balance the
// primal and dual residuals.
struct AnalysisSettings {
  double tol = 1e-4;
  int max_iter = 4000;
  double alpha_relax = 1.5;
  int check_every = 1;
  int threads = 0;            // PSD projection workers, 0 = library default
  bool dense = false;         // bypass the clique decomposition
  double margin = 1.0;        // feasibility margin of the stability program
  std::optional<double> rho;  // penalty override for all problem families
};

// Measured penalty defaults (residual balance on random chain benchmarks).
inline constexpr double kStabilityRho = 1.0;
inline constexpr double kH2Rho = 0.1;
inline constexpr double kH2RhoDense = 0.2;
inline constexpr double kHinfRho = 0.02;
inline constexpr double kHinfRhoDense = 0.015;

enum class StabilityVerdict { Stable, Unknown };

const char* to_string(StabilityVerdict v);

// Outcome of a stability run. The verdict comes from replaying the returned
// certificate against the system, not from the solver status: Stable means
// every P block is positive definite and max eig(A^T P + P A) <= -margin/2.
struct StabilityReport {
  StabilityVerdict verdict = StabilityVerdict::Unknown;
  std::vector<Eigen::MatrixXd> p_blocks;  // certificate, one block per node
  SolveResult solve;
};

// A performance bound together with the solver diagnostics behind it.
// `value` is the bound certified by replaying the solver's P against the
// exact matrix inequality (with a minimal feasibility repair), so on
// Solved runs it is a true upper bound on the norm; `solve.objective`
// keeps the raw solver objective. On unconverged runs that cannot be
// repaired, `value` falls back to the raw objective and is informational.
struct BoundReport {
  double value = 0.0;
  SolveResult solve;
};

// Solves the decomposed stability program and replays the certificate.
// Block-diagonal P is sufficient, not necessary, so a failed replay yields
// Unknown rather than an instability verdict.
StabilityReport verify_stability(const NetworkedSystem& sys,
                                 const AnalysisSettings& settings = {});

// Upper bound on the H2 norm: sqrt of Tr(B^T P B) at the solved and then
// replay-repaired P. Requires D = 0 and a stable system.
BoundReport h2_report(const NetworkedSystem& sys,
                      const AnalysisSettings& settings = {});
double h2_bound(const NetworkedSystem& sys,
                const AnalysisSettings& settings = {});

// Upper bound on the worst-case L2 gain: the smallest gamma the solved and
// then replay-repaired P certifies on the lifted pattern. Requires a
// stable system.
BoundReport hinf_report(const NetworkedSystem& sys,
                        const AnalysisSettings& settings = {});
double hinf_bound(const NetworkedSystem& sys,
                  const AnalysisSettings& settings = {});

// Dense oracles. Guarded to N <= 400; they are meant to validate the
// decomposition path at desk scale, not to run large.

// True iff the spectral abscissa of the stacked state matrix is negative.
bool eig_stable(const GlobalSystem& gs);

// Exact H2 norm via the observability Lyapunov equation
//   A^T Q + Q A + C^T C = 0,  norm = sqrt(Tr(B^T Q B)).
double h2_exact(const GlobalSystem& gs);

// Exact worst-case gain by bisection: gamma exceeds the norm iff the
// associated Hamiltonian matrix has no purely imaginary eigenvalues. The
// bracket starts at [sigma_max(D), gramian-based estimate] and doubles the
// upper end (factor cap 2^20) before bisecting to tol_bisect relative width.
double hinf_exact(const GlobalSystem& gs, double tol_bisect = 1e-6);

}  // namespace netsdp

#endif  // NETSDP_ANALYSIS_HPP
