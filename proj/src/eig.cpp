#include "netsdp/eig.hpp"

#include <Eigen/Eigenvalues>

#include "netsdp/errors.hpp"

#ifdef NETSDP_WITH_LAPACKE
#include <lapacke.h>
#endif

namespace netsdp {

namespace {

// Crossover measured on this codebase: the divide-and-conquer routine wins
// clearly above a few hundred rows and is irrelevant below.
constexpr int kLapackeThreshold = 128;

}  // namespace

SymmetricEig symmetric_eig(const Eigen::MatrixXd& X) {
  if (X.rows() != X.cols())
    throw DimensionMismatchError("eigendecomposition needs a square matrix");
  const int n = static_cast<int>(X.rows());

  SymmetricEig out;
#ifdef NETSDP_WITH_LAPACKE
  if (n >= kLapackeThreshold) {
    out.vectors = 0.5 * (X + X.transpose());
    out.values.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, out.vectors.data(), n,
                       out.values.data());
    if (info != 0)
      throw ConvergenceFailureError("symmetric eigensolver did not converge");
    return out;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (X + X.transpose()));
  if (es.info() != Eigen::Success)
    throw ConvergenceFailureError("symmetric eigensolver did not converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd sym = 0.5 * (X + X.transpose());
  const SymmetricEig eig = symmetric_eig(sym);
  const int n = static_cast<int>(eig.values.size());
  if (n == 0 || eig.values(0) >= 0.0) return sym;

  int k = 0;  // eigenvalues are ascending, so negatives come first
  while (k < n && eig.values(k) < 0.0) ++k;

  // Reconstruct from whichever spectral side is smaller.
  Eigen::MatrixXd projected;
  if (k <= n - k) {
    const auto vneg = eig.vectors.leftCols(k);
    projected.noalias() =
        sym - vneg * eig.values.head(k).asDiagonal() * vneg.transpose();
  } else {
    const auto vpos = eig.vectors.rightCols(n - k);
    projected.noalias() =
        vpos * eig.values.tail(n - k).asDiagonal() * vpos.transpose();
  }
  return 0.5 * (projected + projected.transpose());
}

}  // namespace netsdp
