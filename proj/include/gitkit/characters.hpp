#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gitkit/lie_kernel.hpp"

namespace gitkit {

/// Finite formal sum Σ c_μ t^μ with integer coefficients; zero coefficients are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<Weight, std::int64_t>;

  LaurentPoly() = default;
  static LaurentPoly monomial(const Weight& w, std::int64_t c = 1);
  static LaurentPoly constant(std::size_t rank, std::int64_t c = 1);

  /// Adds c·t^w (checked: throws InvariantError on int64 overflow).
  void add_term(const Weight& w, std::int64_t c);
  std::int64_t coefficient(const Weight& w) const;

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  std::vector<Weight> support() const;
  std::int64_t coefficient_sum() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly scaled(std::int64_t c) const;
  /// Multiplication by t^shift.
  LaurentPoly shifted(const Weight& shift) const;

  /// Image under a linear map on exponents given by integer rows (e.g. SU(2) projection (a,b) ↦ a−b).
  LaurentPoly mapped(const std::vector<Weight>& rows) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  Terms terms_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Weyl denominator Π_{i<j} (1 − t^{e_j − e_i}) for GL(r).
LaurentPoly weyl_denominator(std::size_t r);

/// Exact quotient num / den by lexicographic long division. Throws
/// InvariantError if the division leaves a remainder.
LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den);

/// Character of the irreducible GL(r) module V_λ, r ≤ 6.
LaurentPoly weyl_character(const DominantWeight& lambda);

/// Character of the SU(2) module with top weight d (rank-1 exponents d, d−2, …, −d).
LaurentPoly sl2_character(std::int64_t d);

using Multiplicities = std::map<DominantWeight, std::int64_t>;

/// Optional per-call memo for characters and tensor products. Not shared
/// between threads; results are identical with or without it.
class CharacterCache {
 public:
  const LaurentPoly& character(const DominantWeight& lambda);
  const Multiplicities& tensor(const DominantWeight& a, const DominantWeight& b);

 private:
  std::map<DominantWeight, LaurentPoly> characters_;
  std::map<std::pair<DominantWeight, DominantWeight>, Multiplicities> tensors_;
};

/// Decomposition χ_λ·χ_μ = Σ m_ν χ_ν by peeling off the lexicographically
/// largest remaining dominant weight.
Multiplicities tensor_decompose(const DominantWeight& lambda, const DominantWeight& mu,
                                CharacterCache* cache = nullptr);

/// Decomposes an arbitrary W-invariant character into irreducibles.
Multiplicities decompose_character(LaurentPoly chi, CharacterCache* cache = nullptr);

enum class Group { GL, SL };

/// dim (V_{λ₁} ⊗ … ⊗ V_{λ_n})^G. For SL(r) the determinant twists c·(1,…,1) count as trivial.
std::int64_t invariant_dim(const std::vector<DominantWeight>& weights, Group group);

struct BwbClass {
  std::size_t degree;
  DominantWeight highest;
};

/// Borel–Weil–Bott: cohomology of the line bundle with weight λ sits in
/// degree l(w) with highest weight w(λ+ρ)−ρ, or vanishes (nullopt) when λ+ρ is singular.
std::optional<BwbClass> bwb_cohomology(const Weight& lambda);

}  // namespace gitkit
