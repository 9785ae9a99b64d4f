#include "gitkit/polytopes.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gitkit/error.hpp"

namespace gitkit {

namespace {

using linalg::Matrix;
using linalg::Vector;

Vector to_vec(const Weight& w) { return Vector(w.coords().begin(), w.coords().end()); }
Weight to_weight(Vector v) { return Weight(std::move(v)); }

Rational dotv(const Vector& a, const Vector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer floor_q(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_q(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

// Extreme rays of the pointed cone {y : A y ≥ 0} ⊂ Q^m by the double
// description method; nullopt when A has rank < m (the cone has a lineality space).
std::optional<Matrix> extreme_rays(const Matrix& a, std::size_t m) {
  const auto basis = linalg::independent_rows(a);
  if (basis.size() < m) return std::nullopt;
  Matrix sub;
  for (auto i : basis) sub.push_back(a[i]);
  Matrix rays;
  for (std::size_t k = 0; k < m; ++k) {
    Vector e(m);
    e[k] = 1;
    rays.push_back(linalg::primitive_integer(*linalg::solve(sub, e)));
  }
  std::vector<bool> used(a.size(), false);
  std::vector<std::size_t> processed(basis.begin(), basis.end());
  for (auto i : basis) used[i] = true;

  for (std::size_t i = 0; i < a.size(); ++i) {
    if (used[i]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    Matrix next;
    for (std::size_t j = 0; j < rays.size(); ++j) {
      val[j] = dotv(a[i], rays[j]);
      if (val[j] < 0) {
        neg.push_back(j);
      } else {
        next.push_back(rays[j]);
        if (val[j] > 0) pos.push_back(j);
      }
    }
    if (!neg.empty()) {
      auto tight = [&](std::size_t j) {
        std::vector<bool> z(processed.size());
        for (std::size_t q = 0; q < processed.size(); ++q) z[q] = dotv(a[processed[q]], rays[j]) == 0;
        return z;
      };
      std::vector<std::vector<bool>> zero(rays.size());
      for (auto j : pos) zero[j] = tight(j);
      for (auto j : neg) zero[j] = tight(j);
      for (auto p : pos)
        for (auto n : neg) {
          Matrix common;
          for (std::size_t q = 0; q < processed.size(); ++q)
            if (zero[p][q] && zero[n][q]) common.push_back(a[processed[q]]);
          if (common.size() + 2 < m || linalg::rank(common) + 2 != m) continue;
          Vector y(m);
          for (std::size_t c = 0; c < m; ++c) y[c] = val[p] * rays[n][c] - val[n] * rays[p][c];
          next.push_back(linalg::primitive_integer(y));
        }
      rays = std::move(next);
    }
    used[i] = true;
    processed.push_back(i);
  }
  return rays;
}

// Scales (normal, offset) so the normal is a primitive integer vector.
Facet normalize(const Vector& normal, const Rational& offset) {
  Vector prim = linalg::primitive_integer(normal);
  Rational scale = 0;
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (normal[i] != 0) {
      scale = prim[i] / normal[i];
      break;
    }
  return {to_weight(std::move(prim)), offset * scale};
}

bool satisfies(const Facet& f, const Weight& x) { return dot(f.normal, x) >= f.offset; }
bool on(const Facet& f, const Weight& x) { return dot(f.normal, x) == f.offset; }

}  // namespace

int affine_dim(const std::vector<Weight>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(to_vec(points[i] - points[0]));
  return static_cast<int>(linalg::rank(diffs));
}

Polytope Polytope::hull(std::vector<Weight> points) {
  if (points.empty()) throw DomainError("empty_input", "hull of an empty point set");
  const std::size_t n = points.front().rank();
  for (const auto& p : points) require_rank(p, n, "hull point");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  Matrix lifted;
  for (const auto& p : points) {
    Vector u{Rational(1)};
    for (const auto& c : p.coords()) u.push_back(c);
    lifted.push_back(std::move(u));
  }
  Polytope out;
  out.rank_ = n;
  for (auto& a : linalg::nullspace(lifted, n + 1)) {
    Vector normal(a.begin() + 1, a.end());
    Facet eq = normalize(normal, -a[0]);
    // Equations carry no orientation; fix the first nonzero entry positive.
    for (const auto& c : eq.normal.coords()) {
      if (c == 0) continue;
      if (c < 0) eq = {-eq.normal, -eq.offset};
      break;
    }
    out.equations_.push_back(std::move(eq));
  }

  // Coordinates of the lifted points in the canonical basis of their span.
  const Matrix basis = linalg::rref(lifted).reduced;
  const std::size_t m = basis.size();
  out.dim_ = static_cast<int>(m) - 1;
  if (out.dim_ == 0) {
    out.vertices_ = std::move(points);
    return out;
  }
  Matrix coords;
  for (const auto& u : lifted) coords.push_back(linalg::multiply(basis, u));
  const auto rays = extreme_rays(coords, m);
  if (!rays) throw InvariantError("hull: lifted cone is not pointed");

  std::vector<std::vector<Vector>> tight_at(points.size());
  for (const auto& y : *rays) {
    bool any = false;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (dotv(coords[i], y) == 0) {
        tight_at[i].push_back(y);
        any = true;
      }
    if (!any) continue;
    Vector a(n + 1);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c <= n; ++c) a[c] += y[r] * basis[r][c];
    out.facets_.push_back(normalize(Vector(a.begin() + 1, a.end()), -a[0]));
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    if (linalg::rank(tight_at[i]) == m - 1) out.vertices_.push_back(points[i]);

  std::sort(out.facets_.begin(), out.facets_.end(), [](const Facet& x, const Facet& y) {
    if (x.normal != y.normal) return x.normal < y.normal;
    return x.offset < y.offset;
  });
  out.facets_.erase(std::unique(out.facets_.begin(), out.facets_.end()), out.facets_.end());
  for (const auto& f : out.facets_) {
    std::vector<std::size_t> inc;
    for (std::size_t v = 0; v < out.vertices_.size(); ++v)
      if (on(f, out.vertices_[v])) inc.push_back(v);
    out.incidence_.push_back(std::move(inc));
  }
  return out;
}

Polytope Polytope::from_halfspaces(std::size_t rank, const std::vector<Facet>& halfspaces,
                                   const std::vector<Facet>& equations) {
  for (const auto& h : halfspaces) require_rank(h.normal, rank, "half-space normal");
  for (const auto& e : equations) require_rank(e.normal, rank, "equation normal");
  const Polytope empty_result = empty_of_rank(rank);

  // Parametrize the affine subspace cut out by the equations: x = x0 + N z.
  Vector x0(rank);
  Matrix dirs;
  if (equations.empty()) {
    for (std::size_t i = 0; i < rank; ++i) dirs.push_back(to_vec(Weight::unit(rank, i)));
  } else {
    Matrix e;
    Vector rhs;
    for (const auto& eq : equations) {
      e.push_back(to_vec(eq.normal));
      rhs.push_back(eq.offset);
    }
    auto sol = linalg::solve(e, rhs);
    if (!sol) return empty_result;
    x0 = *sol;
    dirs = linalg::nullspace(e, rank);
  }
  const Weight base = to_weight(x0);
  const std::size_t d = dirs.size();
  if (d == 0) {
    for (const auto& h : halfspaces)
      if (!satisfies(h, base)) return empty_result;
    return hull({base});
  }

  // Homogenized cone {(t, z) : t ≥ 0, (⟨n,x0⟩ − b) t + ⟨n, N z⟩ ≥ 0}.
  Matrix cone;
  Vector t_row(d + 1);
  t_row[0] = 1;
  cone.push_back(t_row);
  for (const auto& h : halfspaces) {
    Vector row{dot(h.normal, base) - h.offset};
    const Vector nv = to_vec(h.normal);
    for (const auto& dir : dirs) row.push_back(dotv(nv, dir));
    cone.push_back(std::move(row));
  }
  const auto rays = extreme_rays(cone, d + 1);
  if (!rays) throw DomainError("unbounded", "half-space system does not define a bounded polytope");
  std::vector<Weight> verts;
  for (const auto& y : *rays) {
    if (y[0] == 0) throw DomainError("unbounded", "half-space system does not define a bounded polytope");
    Vector x = x0;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < rank; ++i) x[i] += dirs[k][i] * y[k + 1] / y[0];
    verts.push_back(to_weight(std::move(x)));
  }
  if (verts.empty()) return empty_result;
  return hull(std::move(verts));
}

bool Polytope::contains(const Weight& x) const {
  require_rank(x, rank_, "point");
  if (empty()) return false;
  for (const auto& e : equations_)
    if (!on(e, x)) return false;
  for (const auto& f : facets_)
    if (!satisfies(f, x)) return false;
  return true;
}

bool Polytope::in_relative_interior(const Weight& x) const {
  require_rank(x, rank_, "point");
  if (empty()) return false;
  for (const auto& e : equations_)
    if (!on(e, x)) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) <= f.offset) return false;
  return true;
}

namespace {

Face make_face(const Polytope& p, std::vector<std::size_t> verts) {
  Face face;
  std::vector<Weight> pts;
  for (auto v : verts) pts.push_back(p.vertices()[v]);
  face.dim = affine_dim(pts);
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    const auto& inc = p.facet_vertices(f);
    if (std::includes(inc.begin(), inc.end(), verts.begin(), verts.end())) face.facets.push_back(f);
  }
  face.vertices = std::move(verts);
  return face;
}

}  // namespace

std::vector<Face> Polytope::faces() const {
  if (empty()) return {};
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> queue;
  for (const auto& inc : incidence_)
    if (seen.insert(inc).second) queue.push_back(inc);
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& inc : incidence_) {
      std::vector<std::size_t> meet;
      std::set_intersection(queue[q].begin(), queue[q].end(), inc.begin(), inc.end(), std::back_inserter(meet));
      if (!meet.empty() && seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  std::vector<std::size_t> all(vertices_.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  seen.insert(all);

  std::vector<Face> out;
  for (const auto& verts : seen) out.push_back(make_face(*this, verts));
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  return out;
}

Face Polytope::face_containing(const Weight& x) const {
  if (!contains(x)) throw DomainError("not_in_polytope", "point lies outside the polytope", x.str());
  std::vector<std::size_t> verts(vertices_.size());
  for (std::size_t v = 0; v < verts.size(); ++v) verts[v] = v;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (!on(facets_[f], x)) continue;
    std::vector<std::size_t> meet;
    std::set_intersection(verts.begin(), verts.end(), incidence_[f].begin(), incidence_[f].end(),
                          std::back_inserter(meet));
    verts = std::move(meet);
  }
  return make_face(*this, std::move(verts));
}

Weight project_origin(const std::vector<Weight>& points, const linalg::Matrix& metric) {
  if (points.empty()) throw DomainError("empty_input", "projection onto an empty affine hull");
  const std::size_t n = points.front().rank();
  Matrix m = metric;
  if (m.empty()) {
    m.assign(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  }
  const Vector v0 = to_vec(points.front());
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(to_vec(points[i] - points.front()));
  Matrix dirs;
  for (auto i : linalg::independent_rows(diffs)) dirs.push_back(diffs[i]);
  if (dirs.empty()) return points.front();
  // Normal equations (Dᵀ M D) c = −Dᵀ M v0.
  const std::size_t k = dirs.size();
  Matrix gram(k, Vector(k));
  Vector rhs(k);
  const Vector mv0 = linalg::multiply(m, v0);
  for (std::size_t i = 0; i < k; ++i) {
    const Vector mdi = linalg::multiply(m, dirs[i]);
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dotv(mdi, dirs[j]);
    rhs[i] = -dotv(dirs[i], mv0);
  }
  const Vector c = *linalg::solve(gram, rhs);
  Vector x = v0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) x[j] += c[i] * dirs[i][j];
  return to_weight(std::move(x));
}

Weight nearest_point(const Polytope& p, const linalg::Matrix& metric) {
  if (p.empty()) throw DomainError("empty_input", "nearest point of an empty polytope");
  auto norm = [&](const Weight& x) {
    if (metric.empty()) return norm_sq(x);
    const Vector v = to_vec(x);
    return dotv(v, linalg::multiply(metric, v));
  };
  std::optional<Weight> best;
  Rational best_norm;
  for (const auto& face : p.faces()) {
    std::vector<Weight> pts;
    for (auto v : face.vertices) pts.push_back(p.vertices()[v]);
    Weight x = project_origin(pts, metric);
    if (!p.contains(x)) continue;
    const Rational nx = norm(x);
    if (!best || nx < best_norm) {
      best = std::move(x);
      best_norm = nx;
    }
  }
  if (!best) throw InvariantError("nearest point not found among face projections");
  return *best;
}

Polytope kostant_polytope(const DominantWeight& lambda) {
  if (lambda.rank() == 0 || lambda.rank() > 5) throw DomainError("bad_rank", "kostant_polytope supports 1 ≤ r ≤ 5");
  return Polytope::hull(weyl_orbit(lambda.weight(), lambda.rank()));
}

std::vector<Weight> lattice_points(const Polytope& p, const Weight& base, const Integer& step) {
  if (p.empty()) return {};
  if (step <= 0) throw DomainError("bad_step", "lattice step must be positive");
  require_rank(base, p.rank(), "lattice base");
  const std::size_t n = p.rank();
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    if (mx - mn > 100) throw DomainError("box_too_large", "lattice enumeration box is wider than 100");
    lo[i] = ceil_q((mn - base[i]) / step);
    hi[i] = floor_q((mx - base[i]) / step);
    if (lo[i] > hi[i]) return {};
  }
  std::vector<Weight> out;
  std::vector<Integer> k = lo;
  while (true) {
    Weight x = Weight::zero(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = base[i] + Rational(k[i] * step);
    if (p.contains(x)) out.push_back(std::move(x));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (k[i] < hi[i]) {
        ++k[i];
        break;
      }
      k[i] = lo[i];
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<Weight> lattice_points(const Polytope& p) {
  return lattice_points(p, Weight::zero(p.rank()), Integer(1));
}

std::vector<Weight> edge_directions(const Polytope& p, std::size_t vertex) {
  std::vector<Weight> out;
  const auto& verts = p.vertices();
  for (std::size_t u = 0; u < verts.size(); ++u) {
    if (u == vertex) continue;
    // u and the vertex span an edge iff the smallest face containing both has no other vertex.
    std::vector<std::size_t> face(verts.size());
    for (std::size_t v = 0; v < face.size(); ++v) face[v] = v;
    for (std::size_t f = 0; f < p.facets().size(); ++f) {
      const auto& inc = p.facet_vertices(f);
      if (!std::binary_search(inc.begin(), inc.end(), vertex) || !std::binary_search(inc.begin(), inc.end(), u)) continue;
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), inc.begin(), inc.end(), std::back_inserter(meet));
      face = std::move(meet);
    }
    if (face.size() == 2) out.push_back(to_weight(linalg::primitive_integer(to_vec(verts[u] - verts[vertex]))));
  }
  return out;
}

DelzantResult is_delzant(const Polytope& p, bool allow_lower_dim) {
  if (p.empty()) throw DomainError("empty_input", "is_delzant of an empty polytope");
  if (!allow_lower_dim && !p.full_dimensional())
    throw DomainError("not_full_dimensional", "is_delzant needs a full-dimensional polytope");
  for (const auto& v : p.vertices())
    if (!v.is_integral()) throw DomainError("not_integral", "is_delzant needs integer vertices", v.str());
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const auto edges = edge_directions(p, v);
    bool ok = static_cast<int>(edges.size()) == p.dim();
    if (ok && !edges.empty()) {
      Matrix rows;
      for (const auto& e : edges) rows.push_back(to_vec(e));
      ok = linalg::maximal_minor_gcd(rows) == 1;
    }
    if (!ok) return {false, p.vertices()[v]};
  }
  return {};
}

CutResult symplectic_cut(const Polytope& p, const Weight& v, const Rational& level) {
  if (p.empty()) throw DomainError("empty_input", "cut of an empty polytope");
  require_rank(v, p.rank(), "cut normal");
  if (v.is_zero()) throw DomainError("zero_normal", "cut normal must be nonzero");
  Rational mn = dot(v, p.vertices().front()), mx = mn;
  for (const auto& x : p.vertices()) {
    mn = std::min(mn, dot(v, x));
    mx = std::max(mx, dot(v, x));
  }
  if (mn >= level) return {CutOutcome::Unchanged, p};
  if (mx < level) return {CutOutcome::Empty, Polytope::empty_of_rank(p.rank())};
  std::vector<Facet> halfspaces = p.facets();
  halfspaces.push_back({v, level});
  return {CutOutcome::Cut, Polytope::from_halfspaces(p.rank(), halfspaces, p.equations())};
}

std::vector<FanCone> normal_fan(const Polytope& p) {
  std::vector<FanCone> out;
  for (auto& face : p.faces()) {
    FanCone cone{face, {}};
    for (auto f : face.facets) cone.generators.push_back(-p.facets()[f].normal);
    for (const auto& e : p.equations()) {
      cone.generators.push_back(e.normal);
      cone.generators.push_back(-e.normal);
    }
    out.push_back(std::move(cone));
  }
  return out;
}

int brianchon_gram_sum(const Polytope& p, const Weight& x) {
  require_rank(x, p.rank(), "sample point");
  for (const auto& e : p.equations())
    if (!on(e, x)) return 0;
  int sum = 0;
  for (const auto& face : p.faces()) {
    const bool inside = std::all_of(face.facets.begin(), face.facets.end(),
                                    [&](std::size_t f) { return satisfies(p.facets()[f], x); });
    if (inside) sum += face.dim % 2 == 0 ? 1 : -1;
  }
  return sum;
}

bool brianchon_gram_check(const Polytope& p, const std::vector<Weight>& samples) {
  return std::all_of(samples.begin(), samples.end(),
                     [&](const Weight& x) { return brianchon_gram_sum(p, x) == (p.contains(x) ? 1 : 0); });
}

}  // namespace gitkit
