#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gitkit/rational.hpp"

namespace gitkit {

/// Exact rational coordinate vector in Q^r. Weights, moment-map values,
/// one-parameter-subgroup directions and roots all use this type.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<Rational> coords) : coords_(coords) {}

  static Weight zero(std::size_t rank) { return Weight(std::vector<Rational>(rank)); }
  static Weight unit(std::size_t rank, std::size_t i);
  static Weight from_ints(std::span<const long> values);

  std::size_t rank() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_integral() const;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  Weight& operator*=(const Rational& s);

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(Weight a, const Rational& s) { return a *= s; }
  friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
  Weight operator-() const;

  friend bool operator==(const Weight& a, const Weight& b);
  /// Lexicographic order; the canonical order used for every sorted output.
  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b);

  std::string str() const;

 private:
  std::vector<Rational> coords_;
};

Rational dot(const Weight& a, const Weight& b);
Rational norm_sq(const Weight& a);
std::vector<double> to_doubles(const Weight& w);

/// Throws DomainError("rank_mismatch") unless a.rank() == expected.
void require_rank(const Weight& a, std::size_t expected, const char* what);

/// Element of the symmetric group S_r acting on coordinates:
/// (w·μ)_{perm[i]} = μ_i.
class WeylElement {
 public:
  explicit WeylElement(std::vector<std::size_t> perm);
  static WeylElement identity(std::size_t r);

  std::size_t rank() const noexcept { return perm_.size(); }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  /// Inversion count of the permutation.
  std::size_t length() const noexcept { return length_; }
  int sign() const noexcept { return length_ % 2 == 0 ? 1 : -1; }

  Weight act(const Weight& mu) const;
  /// (this * other)·μ = this·(other·μ).
  WeylElement compose(const WeylElement& other) const;
  WeylElement inverse() const;

  friend bool operator==(const WeylElement&, const WeylElement&) = default;

 private:
  std::vector<std::size_t> perm_;
  std::size_t length_ = 0;
};

/// All r! elements of S_r in lexicographic order of their permutation vectors.
std::vector<WeylElement> weyl_group(std::size_t r);

/// Weakly decreasing r-tuple (GL(r) highest weight).
class DominantWeight {
 public:
  /// Throws DomainError if parts are not weakly decreasing.
  explicit DominantWeight(std::vector<Rational> parts);
  DominantWeight(std::initializer_list<long> parts);

  std::size_t rank() const noexcept { return parts_.rank(); }
  const Weight& weight() const noexcept { return parts_; }
  const Rational& operator[](std::size_t i) const { return parts_[i]; }

  friend bool operator==(const DominantWeight&, const DominantWeight&) = default;
  friend std::strong_ordering operator<=>(const DominantWeight& a, const DominantWeight& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  Weight parts_;
};

/// SU(2) labels: the spin-j representation corresponds to the GL(2)
/// highest weight (2j, 0); its top SU(2) weight is d = 2j.
DominantWeight sl2_highest(const Rational& spin);
/// Top SU(2) weight d = λ₁ − λ₂ of a rank-2 dominant weight.
Integer sl2_top_weight(const DominantWeight& lambda);

/// W-orbit {w·λ : w ∈ S_r}, deduplicated, sorted lexicographically.
std::vector<Weight> weyl_orbit(const Weight& lambda, std::size_t r);

/// ρ = (r−1, r−2, …, 0).
Weight rho(std::size_t r);

struct Dominantized {
  WeylElement w;
  DominantWeight dominant;
};

/// Returns the unique w with w·μ weakly decreasing, or nullopt (singular)
/// when two entries of μ coincide.
std::optional<Dominantized> dominantize(const Weight& mu);

}  // namespace gitkit
