#pragma once

#include <vector>

namespace gitkit::jacobi {

using RealMatrix = std::vector<std::vector<double>>;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted
/// non-increasing. Stops once the off-diagonal Frobenius norm is below
/// tol·‖A‖_F; throws InvariantError after max_sweeps sweeps.
std::vector<double> symmetric_eigenvalues(RealMatrix a, double tol = 1e-12, int max_sweeps = 100);

/// Eigenvalues of the Hermitian matrix re + i·im (non-increasing), via the
/// 2r×2r real embedding [[re, −im], [im, re]] whose spectrum doubles each eigenvalue.
std::vector<double> hermitian_eigenvalues(const RealMatrix& re, const RealMatrix& im, double tol = 1e-12);

}  // namespace gitkit::jacobi
