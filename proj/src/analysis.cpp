#include "netsdp/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "netsdp/eig.hpp"
#include "netsdp/errors.hpp"
#include "netsdp/sdp.hpp"

#ifdef NETSDP_WITH_LAPACKE
#include <lapacke.h>
#endif

namespace netsdp {

namespace {

// Dense oracles materialize N x N eigenproblems; keep them at desk scale.
constexpr int kOracleSizeLimit = 400;

// An eigenvalue counts as purely imaginary when its real part vanishes
// relative to its magnitude.
constexpr double kImagAxisTol = 1e-8;

AdmmSettings to_admm(const AnalysisSettings& s, double default_rho) {
  AdmmSettings a;
  a.rho = s.rho.value_or(default_rho);
  a.alpha_relax = s.alpha_relax;
  a.tol = s.tol;
  a.max_iter = s.max_iter;
  a.check_every = s.check_every;
  a.threads = s.threads;
  return a;
}

SolveResult run_solver(const SdpProblem& p, const BlockPattern& cone_pattern,
                       const AnalysisSettings& s, double rho_sparse,
                       double rho_dense) {
  if (s.dense) return solve_dense(p, to_admm(s, rho_dense));
  return solve_decomposed(decompose(p, cone_pattern), to_admm(s, rho_sparse));
}

double max_eig(const Eigen::MatrixXd& sym) {
  const SymmetricEig e = symmetric_eig(sym);
  return e.values(e.values.size() - 1);
}

double min_eig(const Eigen::MatrixXd& sym) {
  return symmetric_eig(sym).values(0);
}

double sigma_max(const Eigen::MatrixXd& x) {
  if (x.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(x).singularValues()(0);
}

// Solves A^T Q + Q A + S = 0 (S symmetric) through the complex
// eigendecomposition of A: with A = V diag(lam) V^{-1},
//   lam_i Y_ij + Y_ij lam_j = -(V^T S V)_ij,  Q = V^{-T} Y V^{-1}.
// Stability of A keeps every lam_i + lam_j away from zero.
Eigen::MatrixXd lyap_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s) {
  const Eigen::Index n = a.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailureError(
        "eigendecomposition of the state matrix did not converge");
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
  if (!lu.isInvertible())
    throw NumericalError(
        "state matrix is too close to defective for the dense oracle");
  const Eigen::MatrixXcd w = lu.inverse();

  Eigen::MatrixXcd y = v.transpose() * s * v;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) y(i, j) /= -(lam(i) + lam(j));

  const Eigen::MatrixXcd qc = w.transpose() * y * w;
  Eigen::MatrixXd q = qc.real();
  q = 0.5 * (q + q.transpose()).eval();

  const double scale = std::max(1.0, s.norm() + 2.0 * a.norm() * q.norm());
  const double resid = (a.transpose() * q + q * a + s).norm();
  if (resid > 1e-7 * scale)
    throw NumericalError(
        "dense Lyapunov solve lost accuracy (near-defective state matrix)");
  return q;
}

// Bounded-real test matrix: for g > sigma_max(D), gamma exceeds the
// worst-case gain iff this matrix has no purely imaginary eigenvalues.
Eigen::MatrixXd gain_hamiltonian(const GlobalSystem& gs, double g) {
  const Eigen::Index n = gs.A.rows();
  const Eigen::Index m = gs.B.cols();

  const Eigen::MatrixXd r =
      g * g * Eigen::MatrixXd::Identity(m, m) - gs.D.transpose() * gs.D;
  Eigen::LLT<Eigen::MatrixXd> llt(r);
  if (llt.info() != Eigen::Success)
    throw NumericalError("gain test evaluated at or below sigma_max(D)");

  const Eigen::MatrixXd ah =
      gs.A + gs.B * llt.solve(gs.D.transpose() * gs.C);
  Eigen::MatrixXd h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = ah;
  h.topRightCorner(n, n) = gs.B * llt.solve(gs.B.transpose());
  h.bottomLeftCorner(n, n) =
      -gs.C.transpose() * gs.C -
      (gs.C.transpose() * gs.D) * llt.solve(gs.D.transpose() * gs.C);
  h.bottomRightCorner(n, n) = -ah.transpose();
  return h;
}

bool has_imaginary_eig(const Eigen::MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
#ifdef NETSDP_WITH_LAPACKE
  Eigen::MatrixXd work = h;
  std::vector<double> wr(n), wi(n);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(),
                    wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw ConvergenceFailureError(
        "nonsymmetric eigensolver did not converge on the gain test matrix");
  for (int k = 0; k < n; ++k)
    if (std::abs(wr[k]) <=
        kImagAxisTol * std::max(1.0, std::hypot(wr[k], wi[k])))
      return true;
  return false;
#else
  Eigen::EigenSolver<Eigen::MatrixXd> es(h, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailureError(
        "nonsymmetric eigensolver did not converge on the gain test matrix");
  const Eigen::VectorXcd lam = es.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    if (std::abs(lam(k).real()) <= kImagAxisTol * std::max(1.0, std::abs(lam(k))))
      return true;
  return false;
#endif
}

void check_oracle_size(const GlobalSystem& gs) {
  if (gs.A.rows() > kOracleSizeLimit)
    throw SizeLimitError("dense oracle limited to " +
                         std::to_string(kOracleSizeLimit) + " states, got " +
                         std::to_string(gs.A.rows()));
}

// The solver meets its tolerance on consensus residuals, so the returned P
// can violate the matrix inequalities by a residual-sized margin and the
// raw objective can dip below the exact norm. Both bound reports therefore
// replay the certificate: repair P to exact feasibility and report the
// value that the repaired P provably certifies. A repaired bound can only
// sit above the restricted optimum, never below the true norm.

// Squared quadratic bound certified by P after an additive repair: the
// violating part of the inequality slack S+ = psd part of
// A^T P + P A + C^T C is absorbed by the Lyapunov correction
// Delta = lyap_solve(A, S+), which is PSD, so P + Delta satisfies the
// inequality exactly and any such solution dominates the observability
// gramian. The repair exists whenever A is stable (checked upstream).
double certified_h2_squared(const GlobalSystem& gs, const Eigen::MatrixXd& p) {
  const Eigen::MatrixXd slack_pos = psd_project(
      gs.A.transpose() * p + p * gs.A + gs.C.transpose() * gs.C);
  Eigen::MatrixXd repaired = p;
  if (slack_pos.norm() > 0.0) repaired += lyap_solve(gs.A, slack_pos);
  return std::max(0.0, (gs.B.transpose() * repaired * gs.B).trace());
}

// Worst-case-gain bound certified by P: the smallest gamma for which the
// bounded-real matrix M(P, gamma) is negative semidefinite, found by
// bisection on its top eigenvalue (nonincreasing in gamma). P is first
// lifted onto the PSD cone, which the dissipation argument needs, and its
// Lyapunov part is pushed strictly negative by the same additive repair as
// above so that a finite gamma always exists. Returns -1 only when the
// bisection cannot bracket (numerical breakage).
double certified_gain(const GlobalSystem& gs, Eigen::MatrixXd p, double hint) {
  const Eigen::Index n = gs.A.rows();
  const Eigen::Index m = gs.B.cols();
  const Eigen::Index d = gs.C.rows();

  const double pmin = min_eig(p);
  if (pmin < 0.0) p += -pmin * Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd lyap = gs.A.transpose() * p + p * gs.A;
  const double sigma = max_eig(lyap);
  const double margin = 1e-9 * std::max(1.0, lyap.norm());
  if (sigma > -margin) {
    p += lyap_solve(gs.A, (sigma + margin) *
                              Eigen::MatrixXd::Identity(n, n));
    lyap = gs.A.transpose() * p + p * gs.A;
  }

  Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(n + m + d, n + m + d);
  m0.topLeftCorner(n, n) = lyap;
  m0.block(0, n, n, m) = p * gs.B;
  m0.block(n, 0, m, n) = gs.B.transpose() * p;
  m0.topRightCorner(n, d) = gs.C.transpose();
  m0.bottomLeftCorner(d, n) = gs.C;
  m0.block(n, n + m, m, d) = gs.D.transpose();
  m0.block(n + m, n, d, m) = gs.D;

  const auto top_eig = [&](double g) {
    Eigen::MatrixXd mg = m0;
    mg.diagonal().tail(m + d).array() -= g;
    return max_eig(mg);
  };

  if (top_eig(0.0) <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = std::max(hint, 1e-9);
  const double cap = std::ldexp(std::max(hi, 1.0), 40);
  while (top_eig(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) return -1.0;
  }
  while (hi - lo > 1e-9 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (top_eig(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

const char* to_string(StabilityVerdict v) {
  return v == StabilityVerdict::Stable ? "Stable" : "Unknown";
}

StabilityReport verify_stability(const NetworkedSystem& sys,
                                 const AnalysisSettings& settings) {
  if (settings.margin <= 0.0)
    throw Error("stability margin must be positive");
  const GlobalSystem gs = assemble(sys);
  const PPattern pp(gs.alpha);
  const SdpProblem prob = stability_sdp(gs, pp, settings.margin);

  StabilityReport rep;
  rep.solve = run_solver(prob, stability_cone_pattern(gs), settings,
                         kStabilityRho, kStabilityRho);

  // The verdict comes from the certificate, not the solver status.
  const Eigen::MatrixXd p = p_from_y(pp, rep.solve.y);
  const Eigen::MatrixXd lyap = gs.A.transpose() * p + p * gs.A;
  bool sound = max_eig(lyap) <= -0.5 * settings.margin;
  for (int i = 0; sound && i < gs.alpha.block_count(); ++i) {
    sound = min_eig(p.block(gs.alpha.offset(i), gs.alpha.offset(i),
                            gs.alpha.size(i), gs.alpha.size(i))) > 0.0;
  }
  if (sound) {
    rep.verdict = StabilityVerdict::Stable;
    rep.p_blocks.reserve(gs.alpha.block_count());
    for (int i = 0; i < gs.alpha.block_count(); ++i)
      rep.p_blocks.push_back(p.block(gs.alpha.offset(i), gs.alpha.offset(i),
                                     gs.alpha.size(i), gs.alpha.size(i)));
  }
  return rep;
}

BoundReport h2_report(const NetworkedSystem& sys,
                      const AnalysisSettings& settings) {
  const GlobalSystem gs = assemble(sys);
  if (!eig_stable(gs))
    throw UnstableError("quadratic performance requires a stable system");
  const PPattern pp(gs.alpha);
  const SdpProblem prob = h2_sdp(gs, pp);

  BoundReport rep;
  rep.solve = run_solver(prob, stability_cone_pattern(gs), settings, kH2Rho,
                         kH2RhoDense);

  try {
    rep.value = std::sqrt(certified_h2_squared(gs, p_from_y(pp, rep.solve.y)));
  } catch (const NumericalError&) {
    if (rep.solve.status == SolveStatus::Solved)
      throw ConvergenceFailureError(
          "solution met the tolerance but its certificate cannot be "
          "repaired; tighten tol");
    rep.value = std::sqrt(std::max(0.0, -rep.solve.objective));
  }
  return rep;
}

double h2_bound(const NetworkedSystem& sys, const AnalysisSettings& settings) {
  return h2_report(sys, settings).value;
}

BoundReport hinf_report(const NetworkedSystem& sys,
                        const AnalysisSettings& settings) {
  const GlobalSystem gs = assemble(sys);
  if (!eig_stable(gs))
    throw UnstableError("worst-case gain requires a stable system");
  const PPattern pp(gs.alpha);
  const SdpProblem prob = hinf_sdp(gs, pp);

  BoundReport rep;
  rep.solve = run_solver(prob, hinf_cone_pattern(gs), settings, kHinfRho,
                         kHinfRhoDense);

  double cert = -1.0;
  try {
    cert = certified_gain(gs, p_from_y(pp, rep.solve.y),
                          std::max(0.0, -rep.solve.objective));
  } catch (const NumericalError&) {
  }
  if (cert >= 0.0) {
    rep.value = cert;
  } else if (rep.solve.status == SolveStatus::Solved) {
    throw ConvergenceFailureError(
        "solution met the tolerance but its certificate cannot be repaired; "
        "tighten tol");
  } else {
    rep.value = std::max(0.0, -rep.solve.objective);
  }
  return rep;
}

double hinf_bound(const NetworkedSystem& sys,
                  const AnalysisSettings& settings) {
  return hinf_report(sys, settings).value;
}

bool eig_stable(const GlobalSystem& gs) {
  return spectral_abscissa(gs.A) < 0.0;
}

double h2_exact(const GlobalSystem& gs) {
  check_oracle_size(gs);
  if (gs.D.size() != 0 && gs.D.norm() != 0.0)
    throw NonzeroDError(
        "quadratic norm is undefined with a direct feedthrough term");
  if (!eig_stable(gs))
    throw UnstableError("quadratic norm is undefined for an unstable system");

  const Eigen::MatrixXd q = lyap_solve(gs.A, gs.C.transpose() * gs.C);
  const double t = (gs.B.transpose() * q * gs.B).trace();
  return std::sqrt(std::max(0.0, t));
}

double hinf_exact(const GlobalSystem& gs, double tol_bisect) {
  check_oracle_size(gs);
  if (tol_bisect <= 0.0)
    throw Error("bisection tolerance must be positive");
  if (!eig_stable(gs))
    throw UnstableError("worst-case gain is undefined for an unstable system");

  const double static_gain = sigma_max(gs.D);
  if (gs.B.size() == 0 || gs.C.size() == 0 || gs.B.norm() == 0.0 ||
      gs.C.norm() == 0.0)
    return static_gain;

  // Initial upper end: static gain plus a gramian-based estimate of the
  // strictly proper part, with headroom for peaky responses.
  const Eigen::MatrixXd p =
      lyap_solve(gs.A.transpose(), gs.B * gs.B.transpose());
  const double h2sq = (gs.C * p * gs.C.transpose()).trace();
  double lo = static_gain;
  double hi = static_gain + 4.0 * std::sqrt(std::max(0.0, h2sq)) + 1e-9;
  const double cap = std::ldexp(hi, 20);
  while (has_imaginary_eig(gain_hamiltonian(gs, hi))) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap)
      throw BracketFailureError(
          "no upper bracket certified the gain bisection");
  }
  while (hi - lo > tol_bisect * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point width
    if (has_imaginary_eig(gain_hamiltonian(gs, mid)))
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace netsdp
