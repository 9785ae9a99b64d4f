#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gitkit/rational.hpp"

namespace gitkit::horn {

/// Weakly decreasing eigenvalue list λ₁ ≥ … ≥ λ_r.
class Spectrum {
 public:
  /// Throws DomainError("not_sorted") unless non-increasing.
  explicit Spectrum(std::vector<Rational> values);
  std::size_t rank() const noexcept { return values_.size(); }
  const std::vector<Rational>& values() const noexcept { return values_; }
  const Rational& operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<Rational> values_;
};

/// Σ_{i∈I} a_i + Σ_{j∈J} b_j ≤ Σ_{k∈K} c_k for spectra of A, B and C = A+B.
struct HornInequality {
  std::vector<int> I, J, K;  // 1-based, sorted
  std::int64_t multiplicity = 0;  // puzzle count n_{IJ}^K
};

enum class HornMode { AllPositive, Irredundant };

struct HornSystem {
  int r = 0;
  HornMode mode = HornMode::AllPositive;
  bool trace_equality = true;
  std::vector<HornInequality> inequalities;  // ordered by s, then lexicographically by (I, J, K)
};

/// Inequalities from every triple with n_{IJ}^K > 0 (AllPositive) or = 1
/// (Irredundant), 1 ≤ s < r. Supported for 2 ≤ r ≤ 6.
HornSystem generate_horn_system(int r, HornMode mode, int jobs = 1);

struct CheckResult {
  bool feasible = true;
  bool trace_ok = true;
  std::optional<HornInequality> violated;  // first violated inequality
};

CheckResult check_triple(const Spectrum& a, const Spectrum& b, const Spectrum& c, const HornSystem& sys);

/// Floating-point variant: inequalities and trace hold up to `tol`.
/// `slack_error` receives the largest violation amount seen (0 when none).
CheckResult check_triple_approx(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<double>& c, const HornSystem& sys, double tol,
                                double* slack_error = nullptr);

/// Symmetric zero-sum form: spectra a, b, c' = −reverse(c) of matrices
/// summing to zero satisfy Σ_I a + Σ_J b + Σ_{K'} c' ≤ 0 with K' = {r+1−k}.
struct ZeroSumInequality {
  std::vector<int> I, J, K;
};
ZeroSumInequality to_zero_sum(const HornInequality& ineq, int r);
Spectrum zero_sum_spectrum(const Spectrum& c);

struct SampleReport {
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double max_slack_error = 0;
};

/// Random Hermitian A, B with Gaussian entries; spectra of A, B, A+B are
/// checked against the all-positive system at tolerance 1e−8. r ≤ 6.
SampleReport sample_hermitian_validate(int r, std::int64_t trials, std::uint64_t seed);

/// Closed polygon with side lengths λ exists iff λ_j ≤ Σ_{i≠j} λ_i for every j.
bool polygon_nonempty(const std::vector<Rational>& lengths);

/// Configuration of weighted points on P¹ with the given per-point masses is
/// semistable iff no point carries more than half of `total`.
bool sl2_config_semistable(const std::vector<Rational>& masses, const Rational& total);

}  // namespace gitkit::horn
