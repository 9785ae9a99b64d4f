#pragma once

#include <cstdint>
#include <vector>

#include "gitkit/characters.hpp"
#include "gitkit/polytopes.hpp"

// Sums of rational functions num / Π(1 − t^β) with a recorded expansion
// direction per term; each factor expands as Σ_{k≥0} t^{kβ}, which requires
// ⟨β, dir⟩ < 0.
namespace gitkit::localization {

struct ConeTerm {
  LaurentPoly numerator;
  std::vector<Weight> denominators;
  Weight direction;
};

class ConeSeries {
 public:
  explicit ConeSeries(std::size_t rank = 0) : rank_(rank) {}

  /// Throws InvariantError unless every β is nonzero with ⟨β, dir⟩ < 0.
  void add(ConeTerm term);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<ConeTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  ConeSeries negated() const;
  ConeSeries& operator+=(const ConeSeries& other);
  friend ConeSeries operator+(ConeSeries a, const ConeSeries& b) { return a += b; }
  friend ConeSeries operator-(ConeSeries a, const ConeSeries& b) { return a += b.negated(); }

 private:
  std::size_t rank_;
  std::vector<ConeTerm> terms_;
};

/// Small integer direction ξ with ⟨β, ξ⟩ ≠ 0 for every β, chosen to keep the
/// pairings large relative to ‖ξ‖.
Weight generic_direction(const std::vector<Weight>& betas, std::size_t rank);

/// Direction with ⟨β, ξ⟩ < 0 for all β: −Σβ when valid, otherwise a search.
Weight term_direction(const std::vector<Weight>& betas, std::size_t rank);

/// Same rational function with every factor oriented so ⟨β, ξ⟩ < 0, using
/// 1/(1−t^β) = −t^{−β}/(1−t^{−β}). After this all terms expand in one direction.
ConeSeries with_direction(const ConeSeries& s, const Weight& xi);

/// Brion sum over vertices: t^v/Π(1−t^e), e the primitive edges into P,
/// reoriented to a shared generic direction. Requires P Delzant.
ConeSeries vertex_sum(const Polytope& p);

/// Brion sum for any simple lattice-or-rational polytope; the numerator at
/// each vertex lists the lattice points of its half-open edge parallelepiped.
ConeSeries brion_series(const Polytope& p);

/// Exact value of Σ num/Π(1 − t^β) at t = point. Throws DomainError("pole").
Rational evaluate(const ConeSeries& s, const std::vector<Rational>& point);

struct Box {
  std::vector<std::int64_t> lo, hi;
};

/// Bounding box of P widened by `margin` on every side.
Box bounding_box(const Polytope& p, std::int64_t margin = 0);

/// Sum of the term expansions, keeping only exponents inside the box.
LaurentPoly expand_in_box(const ConeSeries& s, const Box& box);

/// Equality as rational functions (common denominator, exact).
bool equal_as_rational_functions(const ConeSeries& a, const ConeSeries& b);

/// χ(P¹, O(m)) = z^m/(1−z^{−2}) + z^{−m}/(1−z²), exponents in rank 1.
ConeSeries p1_series(std::int64_t m);

struct P1Report {
  bool rational_identity = false;  // character equals minus the two stratum terms
  bool box_identity = false;       // term-by-term agreement inside the box
  LaurentPoly lhs, rhs;
};

/// z^{−d} + … + z^d = Σ_{n∈Z} z^{d+2n} − z^{d+2}/(1−z²) − z^{−d−2}/(1−z^{−2}),
/// with the bi-infinite sum written as the difference of the two expansions
/// of z^d/(1−z²). Box radius defaults to 3d+3.
P1Report p1_kn_identity(std::int64_t d, std::int64_t radius = -1);

struct BlowupReport {
  ConeSeries literal{2};    // the four displayed fixed-point terms, verbatim
  ConeSeries corrected{2};  // Brion-consistent version
  bool literal_equals_corrected = false;
  LaurentPoly chi;          // corrected series expanded (a Laurent polynomial)
  std::vector<Weight> h0, h1;  // exponents with positive / negative coefficient
  std::int64_t h0_dim = 0, h1_dim = 0;
};

BlowupReport blowup_chi(std::int64_t d, std::int64_t e);

/// One term per w: t^{wλ}/Π_{α>0}(1 − t^{−wα}).
ConeSeries weyl_localization_series(const DominantWeight& lambda);
/// The series above expanded in a common direction; equals weyl_character(λ). r ≤ 4.
LaurentPoly weyl_via_localization(const DominantWeight& lambda);

}  // namespace gitkit::localization
