#include "gitkit/torus_git.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "gitkit/error.hpp"

namespace gitkit::torus {

namespace {

using linalg::Matrix;
using linalg::Vector;

Vector to_vec(const Weight& w) { return Vector(w.coords().begin(), w.coords().end()); }

double norm2(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> mat_apply(const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

double metric_norm(const std::vector<std::vector<double>>& g, const std::vector<double>& v) {
  double s = 0;
  const auto gv = mat_apply(g, v);
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * gv[i];
  return std::sqrt(std::max(s, 0.0));
}

std::vector<std::vector<double>> to_double_matrix(const Matrix& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& q : m[i]) out[i].push_back(q.get_d());
  return out;
}

Matrix identity(std::size_t r) {
  Matrix m(r, Vector(r));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

}  // namespace

ProjPoint::ProjPoint(std::vector<Weight> weights, std::vector<Rational> masses) {
  if (weights.empty()) throw DomainError("empty_support", "a projective point needs at least one coordinate");
  if (weights.size() != masses.size()) throw DomainError("size_mismatch", "weights and masses differ in length");
  const std::size_t r = weights.front().rank();
  std::map<Weight, Rational> merged;
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    require_rank(weights[i], r, "support weight");
    if (masses[i] <= 0) throw DomainError("non_positive", "masses must be positive", to_string(masses[i]));
    merged[weights[i]] += masses[i];
    total += masses[i];
  }
  for (auto& [w, c] : merged) {
    weights_.push_back(w);
    masses_.push_back(c / total);
  }
}

Rational Metric::norm_sq(const Weight& lambda) const {
  if (gram.empty()) return gitkit::norm_sq(lambda);
  const Vector v = to_vec(lambda);
  const Vector gv = linalg::multiply(gram, v);
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * gv[i];
  return s;
}

Matrix Metric::inverse() const {
  if (gram.empty()) return {};
  const std::size_t r = gram.size();
  Matrix inv(r, Vector(r));
  for (std::size_t k = 0; k < r; ++k) {
    Vector e(r);
    e[k] = 1;
    auto col = linalg::solve(gram, e);
    if (!col) throw DomainError("bad_metric", "metric Gram matrix is singular");
    for (std::size_t i = 0; i < r; ++i) inv[i][k] = (*col)[i];
  }
  return inv;
}

void Metric::validate(std::size_t r) const {
  if (gram.empty()) return;
  if (gram.size() != r) throw DomainError("bad_metric", "metric Gram matrix has the wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (gram[i].size() != r) throw DomainError("bad_metric", "metric Gram matrix is not square");
    for (std::size_t j = 0; j < r; ++j)
      if (gram[i][j] != gram[j][i]) throw DomainError("bad_metric", "metric Gram matrix is not symmetric");
  }
  // Sylvester: all leading principal minors positive.
  for (std::size_t k = 1; k <= r; ++k) {
    Matrix minor(k, Vector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram[i][j];
    if (linalg::determinant(minor) <= 0) throw DomainError("bad_metric", "metric Gram matrix is not positive definite");
  }
}

double Slope::value() const { return numerator.get_d() / std::sqrt(norm_sq.get_d()); }

std::partial_ordering operator<=>(const Slope& a, const Slope& b) {
  const int sa = sgn(a.numerator), sb = sgn(b.numerator);
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::partial_ordering::equivalent;
  // Same sign: compare n_a²·s_b with n_b²·s_a, reversed for negative slopes.
  const Rational lhs = a.numerator * a.numerator * b.norm_sq;
  const Rational rhs = b.numerator * b.numerator * a.norm_sq;
  const int c = cmp(lhs, rhs) * sa;
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Weight moment_map(const ProjPoint& x, const Weight& shift) {
  require_rank(shift, x.rank(), "moment shift");
  Weight m = Weight::zero(x.rank());
  for (std::size_t j = 0; j < x.size(); ++j) m += x.weights()[j] * x.masses()[j];
  return m - shift;
}

Weight moment_map(const ProjPoint& x) { return moment_map(x, Weight::zero(x.rank())); }

Polytope orbit_moment_polytope(const ProjPoint& x) { return Polytope::hull(x.weights()); }

const char* verdict_name(const StabilityVerdict& v) {
  static constexpr const char* names[] = {"unstable", "semistable", "polystable", "stable"};
  return names[v.index()];
}

bool is_semistable(const StabilityVerdict& v) { return !std::holds_alternative<Unstable>(v); }

StabilityVerdict classify_stability(const ProjPoint& x, const Metric& metric) {
  const Polytope hull = orbit_moment_polytope(x);
  const Weight origin = Weight::zero(x.rank());
  if (!hull.contains(origin)) {
    auto d = max_destabilizing(x, metric);
    return Unstable{d->lambda, d->slope};
  }
  if (hull.in_relative_interior(origin)) {
    const int stab = static_cast<int>(x.rank()) - hull.dim();
    if (stab == 0) return Stable{};
    return Polystable{stab};
  }
  SemistableNotPolystable out{hull.face_containing(origin), {}};
  for (auto v : out.jh_face.vertices) out.face_weights.push_back(hull.vertices()[v]);
  return out;
}

Slope hm_slope(const ProjPoint& x, const Weight& lambda, const Metric& metric) {
  require_rank(lambda, x.rank(), "one-parameter subgroup");
  if (lambda.is_zero()) throw DomainError("zero_direction", "Hilbert–Mumford slope needs λ ≠ 0");
  metric.validate(x.rank());
  Rational best = dot(x.weights().front(), lambda);
  for (const auto& w : x.weights()) best = std::max(best, dot(w, lambda));
  return {best, metric.norm_sq(lambda)};
}

std::optional<Destabilizer> max_destabilizing(const ProjPoint& x, const Metric& metric) {
  metric.validate(x.rank());
  const Polytope hull = orbit_moment_polytope(x);
  if (hull.contains(Weight::zero(x.rank()))) return std::nullopt;
  const Matrix ginv = metric.inverse();
  const Weight p = nearest_point(hull, ginv);
  Weight lambda = ginv.empty() ? -p : -Weight(linalg::multiply(ginv, to_vec(p)));
  const Rational pp = ginv.empty() ? norm_sq(p) : Metric{ginv}.norm_sq(p);
  return Destabilizer{std::move(lambda), p, Slope{-pp, pp}};
}

KempfNess kempf_ness(const ProjPoint& x, const std::vector<double>& xi) {
  const std::size_t r = x.rank();
  if (xi.size() != r) throw DomainError("rank_mismatch", "ξ has the wrong rank");
  const std::size_t n = x.size();
  std::vector<double> z(n);
  std::vector<std::vector<double>> w(n);
  double top = -INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = to_doubles(x.weights()[j]);
    double pairing = 0;
    for (std::size_t i = 0; i < r; ++i) pairing += w[j][i] * xi[i];
    z[j] = std::log(x.masses()[j].get_d()) - 2 * pairing;
    top = std::max(top, z[j]);
  }
  double sum = 0;
  for (double zj : z) sum += std::exp(zj - top);
  KempfNess out{0.5 * (top + std::log(sum)), std::vector<double>(r)};
  for (std::size_t j = 0; j < n; ++j) {
    const double pj = std::exp(z[j] - top) / sum;
    for (std::size_t i = 0; i < r; ++i) out.gradient[i] -= pj * w[j][i];
  }
  return out;
}

namespace {

// Hessian of ψ: 2·Cov(w) under the translated distribution p_j ∝ c_j e^{−2⟨w_j, ξ⟩}.
std::vector<std::vector<double>> local_hessian(const ProjPoint& x, const std::vector<double>& xi) {
  const std::size_t r = x.rank();
  std::vector<double> z(x.size());
  double top = -INFINITY;
  std::vector<std::vector<double>> w(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    w[j] = to_doubles(x.weights()[j]);
    double pairing = 0;
    for (std::size_t i = 0; i < r; ++i) pairing += w[j][i] * xi[i];
    z[j] = std::log(x.masses()[j].get_d()) - 2 * pairing;
    top = std::max(top, z[j]);
  }
  double sum = 0;
  for (double zj : z) sum += std::exp(zj - top);
  std::vector<double> p(x.size()), mean(r, 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    p[j] = std::exp(z[j] - top) / sum;
    for (std::size_t i = 0; i < r; ++i) mean[i] += p[j] * w[j][i];
  }
  std::vector<std::vector<double>> h(r, std::vector<double>(r, 0.0));
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) h[a][b] += 2 * p[j] * (w[j][a] - mean[a]) * (w[j][b] - mean[b]);
  return h;
}

// Gaussian elimination with partial pivoting; a is symmetric positive definite here.
std::vector<double> solve_spd(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t c = n; c-- > 0;) {
    double v = b[c];
    for (std::size_t k = c + 1; k < n; ++k) v -= a[c][k] * x[k];
    x[c] = v / a[c][c];
  }
  return x;
}

}  // namespace

DescentResult minimize_kempf_ness(const ProjPoint& x, const DescentOptions& opts) {
  if (!(opts.tol > 0)) throw DomainError("bad_tolerance", "descent tolerance must be positive");
  const std::size_t r = x.rank();
  opts.metric.validate(r);
  const auto gram = opts.metric.gram.empty() ? to_double_matrix(identity(r)) : to_double_matrix(opts.metric.gram);
  constexpr double armijo = 1e-4;
  constexpr double escape_min_slope = 1e-5;

  std::vector<double> xi(r, 0.0);
  KempfNess cur = kempf_ness(x, xi);
  std::vector<double> snap_xi;
  double snap_psi = 0;
  std::optional<std::pair<std::vector<double>, double>> last_estimate;

  for (long iter = 0; iter < opts.max_iter; ++iter) {
    const double gnorm = norm2(cur.gradient);
    if (gnorm < opts.tol) return Converged{xi, gnorm, iter};

    if (iter % opts.window == 0) {
      if (!snap_xi.empty() && norm2(xi) > opts.radius) {
        std::vector<double> delta(r);
        for (std::size_t i = 0; i < r; ++i) delta[i] = xi[i] - snap_xi[i];
        const double len = metric_norm(gram, delta);
        const double eucl = norm2(delta);
        std::vector<double> dir(r);
        for (std::size_t i = 0; i < r; ++i) dir[i] = -delta[i] / eucl;
        const double slope = (cur.value - snap_psi) / len;
        if (last_estimate) {
          std::vector<double> change(r);
          for (std::size_t i = 0; i < r; ++i) change[i] = dir[i] - last_estimate->first[i];
          if (norm2(change) < opts.stable_tol && std::abs(slope - last_estimate->second) < opts.stable_tol &&
              slope < -escape_min_slope)
            return Escaped{dir, slope, iter};
        }
        last_estimate = std::make_pair(dir, slope);
      }
      snap_xi = xi;
      snap_psi = cur.value;
    }

    // Regularized Newton step −(H + ‖g‖G)⁻¹g. Plain gradient steps crawl along
    // the exponentially flat tails that appear when 0 sits on the boundary of
    // the weight hull; the ‖g‖G term keeps the step finite where H degenerates
    // and makes it follow −G⁻¹g asymptotically, as the escape analysis expects.
    auto h = local_hessian(x, xi);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) h[i][j] += gnorm * gram[i][j];
    std::vector<double> neg(r);
    for (std::size_t i = 0; i < r; ++i) neg[i] = -cur.gradient[i];
    std::vector<double> dir = solve_spd(h, neg);
    double slope0 = 0;
    for (std::size_t i = 0; i < r; ++i) slope0 += cur.gradient[i] * dir[i];
    double t = std::min(1.0, opts.max_displacement / norm2(dir));
    // Values are only resolvable to a few ulps of |ψ|.
    const double slack = 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.value));
    std::vector<double> trial(r);
    KempfNess next{};
    while (true) {
      for (std::size_t i = 0; i < r; ++i) trial[i] = xi[i] + t * dir[i];
      next = kempf_ness(x, trial);
      if (next.value <= cur.value + armijo * t * slope0 + slack) break;
      t *= 0.5;
      if (t < 1e-300) throw InvariantError("Kempf–Ness line search failed to find a descent step");
    }
    xi = trial;
    cur = std::move(next);
  }
  throw DomainError("no_verdict", "Kempf–Ness descent reached max_iter without converging or escaping",
                    std::to_string(opts.max_iter));
}

ProjPoint associated_graded(const ProjPoint& x, const Weight& lambda) {
  require_rank(lambda, x.rank(), "one-parameter subgroup");
  if (lambda.is_zero()) throw DomainError("zero_direction", "associated graded needs λ ≠ 0");
  Rational best = dot(x.weights().front(), lambda);
  for (const auto& w : x.weights()) best = std::max(best, dot(w, lambda));
  std::vector<Weight> ws;
  std::vector<Rational> cs;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (dot(x.weights()[j], lambda) == best) {
      ws.push_back(x.weights()[j]);
      cs.push_back(x.masses()[j]);
    }
  return ProjPoint(std::move(ws), std::move(cs));
}

JordanHolderCone jordan_holder_cone(const ProjPoint& x) {
  const Polytope hull = orbit_moment_polytope(x);
  const Weight origin = Weight::zero(x.rank());
  if (!hull.contains(origin)) throw DomainError("unstable", "Jordan–Hölder cone needs a semistable point");
  JordanHolderCone out;
  if (hull.in_relative_interior(origin)) return out;
  out.empty = false;
  const Face face = hull.face_containing(origin);
  for (auto f : face.facets) out.generators.push_back(-hull.facets()[f].normal);
  for (const auto& e : hull.equations()) {
    out.generators.push_back(e.normal);
    out.generators.push_back(-e.normal);
  }
  return out;
}

std::vector<Weight> critical_types(const std::vector<Weight>& weights) {
  if (weights.empty()) throw DomainError("empty_input", "critical_types needs at least one weight");
  std::vector<Weight> ws = weights;
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  if (ws.size() > 12) throw DomainError("too_many_weights", "critical_types supports at most 12 weights");
  if (ws.front().rank() > 4) throw DomainError("bad_rank", "critical_types supports rank ≤ 4");
  std::set<Weight> types;
  const std::size_t n = ws.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Weight> subset;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) subset.push_back(ws[j]);
    // The projection to aff(S) is the nearest point of hull(S) exactly when it lies in hull(S).
    Weight p = project_origin(subset);
    if (Polytope::hull(subset).in_relative_interior(p)) types.insert(std::move(p));
  }
  return {types.begin(), types.end()};
}

ProjPoint product(const ProjPoint& x, const ProjPoint& y) {
  if (x.rank() != y.rank()) throw DomainError("rank_mismatch", "product needs points of equal rank");
  std::vector<Weight> ws;
  std::vector<Rational> cs;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      ws.push_back(x.weights()[i] + y.weights()[j]);
      cs.push_back(x.masses()[i] * y.masses()[j]);
    }
  return ProjPoint(std::move(ws), std::move(cs));
}

}  // namespace gitkit::torus
