#pragma once

#include <optional>
#include <vector>

#include "gitkit/lie_kernel.hpp"
#include "gitkit/linalg.hpp"

namespace gitkit {

/// Half-space ⟨x, normal⟩ ≥ offset (facets) or hyperplane ⟨x, normal⟩ = offset
/// (equations). Normals are primitive integer vectors.
struct Facet {
  Weight normal;
  Rational offset;
  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Face {
  std::vector<std::size_t> vertices;  // indices into Polytope::vertices()
  std::vector<std::size_t> facets;    // facets containing the face
  int dim = 0;
};

/// Closed convex polytope with exact V- and H-representations. Facet
/// normals point inward; vertices are sorted lexicographically and facets
/// by (normal, offset). A polytope with no vertices is empty (dim −1).
class Polytope {
 public:
  Polytope() = default;
  static Polytope empty_of_rank(std::size_t rank) {
    Polytope p;
    p.rank_ = rank;
    return p;
  }

  /// Convex hull of a nonempty point set (double description on the lifted cone).
  static Polytope hull(std::vector<Weight> points);

  /// {x : ⟨x,n⟩ ≥ b for facets, ⟨x,n⟩ = b for equations}. Throws
  /// DomainError("unbounded") for unbounded input; may return an empty polytope.
  static Polytope from_halfspaces(std::size_t rank, const std::vector<Facet>& halfspaces,
                                  const std::vector<Facet>& equations = {});

  std::size_t rank() const noexcept { return rank_; }
  int dim() const noexcept { return dim_; }
  bool empty() const noexcept { return vertices_.empty(); }
  bool full_dimensional() const noexcept { return dim_ == static_cast<int>(rank_); }

  const std::vector<Weight>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const std::vector<Facet>& equations() const noexcept { return equations_; }
  /// Indices of vertices lying on facet f.
  const std::vector<std::size_t>& facet_vertices(std::size_t f) const { return incidence_[f]; }

  bool contains(const Weight& x) const;
  bool in_relative_interior(const Weight& x) const;

  /// Every nonempty face including P itself, ordered by dimension then vertex set.
  std::vector<Face> faces() const;

  /// Smallest face whose relative interior contains x (x must lie in P).
  Face face_containing(const Weight& x) const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_ && a.facets_ == b.facets_ && a.equations_ == b.equations_;
  }

 private:
  std::size_t rank_ = 0;
  int dim_ = -1;
  std::vector<Weight> vertices_;
  std::vector<Facet> facets_;
  std::vector<Facet> equations_;
  std::vector<std::vector<std::size_t>> incidence_;
};

/// Affine dimension of a finite point set (−1 if empty).
int affine_dim(const std::vector<Weight>& points);

/// Orthogonal projection of the origin onto aff(points) for the inner
/// product ⟨x, M y⟩ (M = identity when empty).
Weight project_origin(const std::vector<Weight>& points, const linalg::Matrix& metric = {});

/// Point of P nearest to the origin for the inner product ⟨x, M y⟩, found by
/// projecting onto the affine hull of every face.
Weight nearest_point(const Polytope& p, const linalg::Matrix& metric = {});

/// hull of the W-orbit of λ.
Polytope kostant_polytope(const DominantWeight& lambda);

/// Integer points of P; throws when the bounding box is wider than 100.
std::vector<Weight> lattice_points(const Polytope& p);
/// Points of P in the coset base + step·Z^r.
std::vector<Weight> lattice_points(const Polytope& p, const Weight& base, const Integer& step);

struct DelzantResult {
  bool delzant = true;
  std::optional<Weight> failing_vertex;
};

/// Every vertex has exactly dim primitive edge directions forming part of a
/// lattice basis (maximal minors coprime; det ±1 when full-dimensional).
/// Throws unless P is full-dimensional with integer vertices, or
/// `allow_lower_dim` is set.
DelzantResult is_delzant(const Polytope& p, bool allow_lower_dim = false);

/// Primitive edge directions at a vertex, pointing into P.
std::vector<Weight> edge_directions(const Polytope& p, std::size_t vertex);

enum class CutOutcome { Cut, Unchanged, Empty };

struct CutResult {
  CutOutcome outcome;
  Polytope polytope;
};

/// P ∩ {⟨x, v⟩ ≥ level}.
CutResult symplectic_cut(const Polytope& p, const Weight& v, const Rational& level);

struct FanCone {
  Face face;
  std::vector<Weight> generators;  // outward normals −n of the facets containing the face
};

/// Outward normal cone of every face; P itself gets the zero cone.
std::vector<FanCone> normal_fan(const Polytope& p);

/// Σ_F (−1)^{dim F} [x ∈ T_F], T_F the closed tangent cone of P at F.
int brianchon_gram_sum(const Polytope& p, const Weight& x);
/// brianchon_gram_sum(x) == [x ∈ P] at every sample.
bool brianchon_gram_check(const Polytope& p, const std::vector<Weight>& samples);

}  // namespace gitkit
