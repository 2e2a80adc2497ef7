#ifndef NETSDP_EIG_HPP
#define NETSDP_EIG_HPP

#include <Eigen/Dense>

namespace netsdp {

struct SymmetricEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, values(i) <-> col(i)
};

// Deterministic symmetric eigendecomposition with ascending eigenvalues.
// Contract: Q orthonormal within 1e-10 and |Q L Q^T - X|_F <= 1e-10 |X|_F.
// Throws ConvergenceFailure if the underlying iteration does not converge.
SymmetricEig symmetric_eig(const Eigen::MatrixXd& X);

// Frobenius-nearest positive semidefinite matrix: eigendecompose the
// symmetrized input and clip negative eigenvalues to zero. Inputs that are
// already psd are returned unchanged (up to the symmetrization).
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& X);

}  // namespace netsdp

#endif  // NETSDP_EIG_HPP
