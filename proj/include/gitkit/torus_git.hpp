#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "gitkit/lie_kernel.hpp"
#include "gitkit/linalg.hpp"
#include "gitkit/polytopes.hpp"

// Torus actions on projective space. A point is recorded by the moment
// weights w_j of its nonzero coordinates and the squared magnitudes c_j > 0;
// the weights are w_j = −a_j for a linear action with weights a_j.
namespace gitkit::torus {

class ProjPoint {
 public:
  /// Merges equal weights (summing masses) and normalizes masses to sum 1.
  /// Throws on empty support, non-positive mass or mixed ranks.
  ProjPoint(std::vector<Weight> weights, std::vector<Rational> masses);

  std::size_t rank() const noexcept { return weights_.front().rank(); }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<Weight>& weights() const noexcept { return weights_; }
  const std::vector<Rational>& masses() const noexcept { return masses_; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  std::vector<Weight> weights_;  // sorted
  std::vector<Rational> masses_;
};

/// Inner product on the Lie algebra, given by a symmetric positive definite
/// Gram matrix; empty means the standard one.
struct Metric {
  linalg::Matrix gram;

  Rational norm_sq(const Weight& lambda) const;
  /// G⁻¹ (identity when gram is empty).
  linalg::Matrix inverse() const;
  /// Throws DomainError unless gram is symmetric positive definite of size r.
  void validate(std::size_t r) const;
};

/// μ = numerator / sqrt(norm_sq), compared exactly.
struct Slope {
  Rational numerator;
  Rational norm_sq;

  double value() const;
  friend std::partial_ordering operator<=>(const Slope& a, const Slope& b);
  friend bool operator==(const Slope& a, const Slope& b) { return (a <=> b) == 0; }
};

Weight moment_map(const ProjPoint& x, const Weight& shift);
Weight moment_map(const ProjPoint& x);

/// hull of the support weights.
Polytope orbit_moment_polytope(const ProjPoint& x);

struct Unstable {
  Weight lambda;  // maximally destabilizing direction
  Slope slope;
};
struct SemistableNotPolystable {
  Face jh_face;                     // face of the weight hull whose relative interior holds 0
  std::vector<Weight> face_weights;
};
struct Polystable {
  int stabilizer_dim;
};
struct Stable {};

using StabilityVerdict = std::variant<Unstable, SemistableNotPolystable, Polystable, Stable>;

const char* verdict_name(const StabilityVerdict& v);
bool is_semistable(const StabilityVerdict& v);

StabilityVerdict classify_stability(const ProjPoint& x, const Metric& metric = {});

/// max_j ⟨w_j, λ⟩ / ‖λ‖.
Slope hm_slope(const ProjPoint& x, const Weight& lambda, const Metric& metric = {});

struct Destabilizer {
  Weight lambda;   // −G⁻¹ p
  Weight nearest;  // p, the point of the weight hull closest to 0 in the dual metric
  Slope slope;     // −‖p‖
};

/// nullopt when 0 lies in the weight hull.
std::optional<Destabilizer> max_destabilizing(const ProjPoint& x, const Metric& metric = {});

struct KempfNess {
  double value;
  std::vector<double> gradient;
};

/// ψ(ξ) = ½ log Σ c_j e^{−2⟨w_j, ξ⟩} and its gradient −Φ(translated point).
KempfNess kempf_ness(const ProjPoint& x, const std::vector<double>& xi);

struct DescentOptions {
  double tol = 1e-8;
  long max_iter = 100000;
  double radius = 50;
  long window = 100;
  double stable_tol = 1e-7;  // window-to-window change that counts as stabilized
  double max_displacement = 1.0;
  Metric metric;
};

struct Converged {
  std::vector<double> xi;
  double residual;
  long iterations;
};
struct Escaped {
  std::vector<double> direction;  // unit vector, comparable with λ*
  double slope;                   // asymptotic Δψ/‖Δξ‖
  long iterations;
};
using DescentResult = std::variant<Converged, Escaped>;

/// Descent on ψ along −(H + ‖∇ψ‖G)⁻¹∇ψ with Armijo backtracking from step 1.
/// Throws DomainError("no_verdict") when max_iter passes without either verdict.
DescentResult minimize_kempf_ness(const ProjPoint& x, const DescentOptions& opts = {});

/// Limit point under λ: support restricted to argmax_j ⟨w_j, λ⟩.
ProjPoint associated_graded(const ProjPoint& x, const Weight& lambda);

struct JordanHolderCone {
  bool empty = true;  // x already polystable
  std::vector<Weight> generators;
};

/// Normal cone of the weight-hull face containing 0. Throws for unstable x.
JordanHolderCone jordan_holder_cone(const ProjPoint& x);

/// Nearest points p_S of hull(S) to 0, over subsets S, that lie in relint hull(S).
std::vector<Weight> critical_types(const std::vector<Weight>& weights);

/// Segre product: weights add, masses multiply.
ProjPoint product(const ProjPoint& x, const ProjPoint& y);

}  // namespace gitkit::torus
