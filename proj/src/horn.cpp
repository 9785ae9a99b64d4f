#include "gitkit/horn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gitkit/error.hpp"
#include "gitkit/jacobi.hpp"
#include "gitkit/puzzles.hpp"

namespace gitkit::horn {

Spectrum::Spectrum(std::vector<Rational> values) : values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1]) throw DomainError("not_sorted", "spectrum must be non-increasing", to_string(values_[i]));
}

HornSystem generate_horn_system(int r, HornMode mode, int jobs) {
  if (r < 2 || r > 6) throw DomainError("bad_rank", "generate_horn_system supports 2 ≤ r ≤ 6");
  HornSystem sys;
  sys.r = r;
  sys.mode = mode;
  for (int s = 1; s < r; ++s) {
    const auto subs = puzzles::subsets(r, s);
    for (const auto& I : subs)
      for (const auto& J : subs)
        for (const auto& K : subs) {
          const std::int64_t n = puzzles::count_puzzles(r, {I, J, K}, jobs);
          if (mode == HornMode::AllPositive ? n > 0 : n == 1) sys.inequalities.push_back({I, J, K, n});
        }
  }
  return sys;
}

namespace {

template <typename T, typename Values>
T partial_sum(const Values& v, const std::vector<int>& idx) {
  T s = 0;
  for (int i : idx) s += v[i - 1];
  return s;
}

}  // namespace

CheckResult check_triple(const Spectrum& a, const Spectrum& b, const Spectrum& c, const HornSystem& sys) {
  const std::size_t r = a.rank();
  if (b.rank() != r || c.rank() != r || static_cast<int>(r) != sys.r)
    throw DomainError("rank_mismatch", "check_triple needs three spectra of the system's rank");
  CheckResult out;
  const auto& av = a.values();
  const auto& bv = b.values();
  const auto& cv = c.values();
  if (sys.trace_equality) {
    const Rational ta = std::accumulate(av.begin(), av.end(), Rational(0));
    const Rational tb = std::accumulate(bv.begin(), bv.end(), Rational(0));
    const Rational tc = std::accumulate(cv.begin(), cv.end(), Rational(0));
    if (ta + tb != tc) {
      out.feasible = out.trace_ok = false;
      return out;
    }
  }
  for (const auto& ineq : sys.inequalities) {
    if (partial_sum<Rational>(av, ineq.I) + partial_sum<Rational>(bv, ineq.J) > partial_sum<Rational>(cv, ineq.K)) {
      out.feasible = false;
      out.violated = ineq;
      return out;
    }
  }
  return out;
}

CheckResult check_triple_approx(const std::vector<double>& a, const std::vector<double>& b,
                                const std::vector<double>& c, const HornSystem& sys, double tol, double* slack_error) {
  const std::size_t r = a.size();
  if (b.size() != r || c.size() != r || static_cast<int>(r) != sys.r)
    throw DomainError("rank_mismatch", "check_triple needs three spectra of the system's rank");
  CheckResult out;
  double worst = 0;
  const double trace_gap = std::abs(std::accumulate(a.begin(), a.end(), 0.0) + std::accumulate(b.begin(), b.end(), 0.0) -
                                    std::accumulate(c.begin(), c.end(), 0.0));
  if (sys.trace_equality && trace_gap > tol) {
    out.feasible = out.trace_ok = false;
    worst = trace_gap;
  }
  for (const auto& ineq : sys.inequalities) {
    const double excess = partial_sum<double>(a, ineq.I) + partial_sum<double>(b, ineq.J) - partial_sum<double>(c, ineq.K);
    worst = std::max(worst, excess);
    if (excess > tol && out.feasible) {
      out.feasible = false;
      out.violated = ineq;
    }
  }
  if (slack_error) *slack_error = worst;
  return out;
}

ZeroSumInequality to_zero_sum(const HornInequality& ineq, int r) {
  ZeroSumInequality z{ineq.I, ineq.J, {}};
  for (int k : ineq.K) z.K.push_back(r + 1 - k);
  std::sort(z.K.begin(), z.K.end());
  return z;
}

Spectrum zero_sum_spectrum(const Spectrum& c) {
  std::vector<Rational> v(c.values().rbegin(), c.values().rend());
  for (auto& x : v) x = -x;
  return Spectrum(std::move(v));
}

SampleReport sample_hermitian_validate(int r, std::int64_t trials, std::uint64_t seed) {
  if (r < 2 || r > 6) throw DomainError("bad_rank", "sample_hermitian_validate supports 2 ≤ r ≤ 6");
  const HornSystem sys = generate_horn_system(r, HornMode::AllPositive);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  using jacobi::RealMatrix;
  auto draw = [&](RealMatrix& re, RealMatrix& im) {
    re.assign(r, std::vector<double>(r));
    im.assign(r, std::vector<double>(r));
    for (int i = 0; i < r; ++i) {
      re[i][i] = gauss(rng);
      for (int j = i + 1; j < r; ++j) {
        re[i][j] = re[j][i] = gauss(rng);
        im[i][j] = gauss(rng);
        im[j][i] = -im[i][j];
      }
    }
  };
  SampleReport report;
  RealMatrix are, aim, bre, bim;
  for (std::int64_t t = 0; t < trials; ++t) {
    draw(are, aim);
    draw(bre, bim);
    RealMatrix cre = are, cim = aim;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        cre[i][j] += bre[i][j];
        cim[i][j] += bim[i][j];
      }
    double slack = 0;
    const auto res = check_triple_approx(jacobi::hermitian_eigenvalues(are, aim), jacobi::hermitian_eigenvalues(bre, bim),
                                         jacobi::hermitian_eigenvalues(cre, cim), sys, 1e-8, &slack);
    ++report.trials;
    if (!res.feasible) ++report.violations;
    report.max_slack_error = std::max(report.max_slack_error, slack);
  }
  return report;
}

bool polygon_nonempty(const std::vector<Rational>& lengths) {
  if (lengths.empty()) throw DomainError("empty_input", "polygon needs at least one side");
  Rational total = 0;
  for (const auto& l : lengths) {
    if (l <= 0) throw DomainError("non_positive", "side lengths must be positive", to_string(l));
    total += l;
  }
  return std::all_of(lengths.begin(), lengths.end(), [&](const Rational& l) { return l <= total - l; });
}

bool sl2_config_semistable(const std::vector<Rational>& masses, const Rational& total) {
  Rational sum = 0;
  for (const auto& m : masses) {
    if (m <= 0) throw DomainError("non_positive", "point masses must be positive", to_string(m));
    sum += m;
  }
  if (sum != total) throw DomainError("inconsistent_total", "masses do not sum to the stated total", to_string(sum));
  return std::all_of(masses.begin(), masses.end(), [&](const Rational& m) { return m <= total - m; });
}

}  // namespace gitkit::horn
