#include "gitkit/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gitkit/error.hpp"

namespace gitkit::jacobi {

namespace {

double off_diagonal_sq(const RealMatrix& a) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return s;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(RealMatrix a, double tol, int max_sweeps) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("not_square", "symmetric_eigenvalues needs a square matrix");
  double frob = 0;
  for (const auto& row : a)
    for (double x : row) frob += x * x;
  const double threshold = tol * tol * std::max(frob, 1e-300);

  int sweep = 0;
  while (off_diagonal_sq(a) > threshold) {
    if (++sweep > max_sweeps) throw InvariantError("Jacobi eigen-solver did not converge", std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        // Rotation angle from the standard tangent formula (smaller root for stability).
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

std::vector<double> hermitian_eigenvalues(const RealMatrix& re, const RealMatrix& im, double tol) {
  const std::size_t r = re.size();
  RealMatrix big(2 * r, std::vector<double>(2 * r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      big[i][j] = re[i][j];
      big[i + r][j + r] = re[i][j];
      big[i][j + r] = -im[i][j];
      big[i + r][j] = im[i][j];
    }
  auto doubled = symmetric_eigenvalues(std::move(big), tol);
  std::vector<double> out(r);
  for (std::size_t i = 0; i < r; ++i) out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return out;
}

}  // namespace gitkit::jacobi
