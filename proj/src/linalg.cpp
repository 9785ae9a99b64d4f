#include "gitkit/linalg.hpp"

#include <algorithm>
#include <functional>

#include "gitkit/error.hpp"

namespace gitkit::linalg {

Rref rref(Matrix a) {
  Rref out;
  if (a.empty()) return out;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

Matrix nullspace(const Matrix& a, std::size_t cols) {
  Rref red = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.reduced[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref red = rref(std::move(aug));
  Vector x(cols);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == cols) return std::nullopt;
    x[red.pivots[i]] = red.reduced[i][cols];
  }
  return x;
}

Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

std::vector<std::size_t> independent_rows(const Matrix& rows) {
  std::vector<std::size_t> chosen;
  Matrix acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.push_back(rows[i]);
    if (rank(acc) == acc.size()) {
      chosen.push_back(i);
    } else {
      acc.pop_back();
    }
  }
  return chosen;
}

Vector primitive_integer(const Vector& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  Integer g = 0;
  for (const auto& q : v) g = gcd(g, Integer(q.get_num() * (den / q.get_den())));
  if (g == 0) return v;
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(Integer(v[i].get_num() * (den / v[i].get_den()) / g));
  return out;
}

Integer maximal_minor_gcd(const Matrix& rows) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  const std::size_t n = rows.front().size();
  if (k > n) return 0;
  Integer g = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() == k) {
      Matrix m(k, Vector(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = rows[i][pick[j]];
      Rational d = determinant(std::move(m));
      if (!is_integer(d)) throw DomainError("not_integral", "minor of a non-integer matrix");
      g = gcd(g, d.get_num());
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      pick.push_back(c);
      rec(c + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return g;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a.front().size(), Vector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Vector multiply(const Matrix& a, const Vector& x) {
  Vector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

}  // namespace gitkit::linalg
