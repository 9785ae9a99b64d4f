#pragma once

#include <optional>
#include <vector>

#include "gitkit/rational.hpp"

// Exact linear algebra over Q for the small dense systems that appear in
// hulls, projections and Delzant checks.
namespace gitkit::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;  // row-major, rows may be empty only if the matrix is

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(Matrix a);
std::size_t rank(const Matrix& a);

/// Basis of {x : A x = 0}; `cols` is needed when A has no rows.
Matrix nullspace(const Matrix& a, std::size_t cols);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Rational determinant(Matrix a);

/// Indices of a maximal linearly independent subset of the rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const Matrix& rows);

/// Positive multiple of v with coprime integer entries (v returned as-is if zero).
Vector primitive_integer(const Vector& v);

/// gcd of all k×k minors of the k×n integer matrix (k ≤ n); 0 when rank < k.
Integer maximal_minor_gcd(const Matrix& rows);

Matrix transpose(const Matrix& a);
Vector multiply(const Matrix& a, const Vector& x);

}  // namespace gitkit::linalg
