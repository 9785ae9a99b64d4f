#include "gitkit/localization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "gitkit/error.hpp"

namespace gitkit::localization {

namespace {

Weight canonical(const Weight& b) {
  for (const auto& c : b.coords()) {
    if (c == 0) continue;
    return c > 0 ? b : -b;
  }
  return b;
}

Rational power(const Rational& base, std::int64_t e) {
  if (e < 0) {
    if (base == 0) throw DomainError("pole", "negative power of zero");
    return 1 / power(base, -e);
  }
  Rational out = 1, b = base;
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

Rational monomial_value(const Weight& w, const std::vector<Rational>& point) {
  Rational v = 1;
  for (std::size_t i = 0; i < w.rank(); ++i) v *= power(point[i], to_int64(w[i]));
  return v;
}

// Grid search over small integer vectors maximizing score(ξ)/‖ξ‖; nullopt if nothing qualifies.
std::optional<Weight> best_on_grid(std::size_t rank, const std::function<std::optional<double>(const Weight&)>& score) {
  for (long radius : {3L, 7L, 15L}) {
    std::optional<Weight> best;
    double best_score = 0;
    std::vector<long> c(rank, -radius);
    while (true) {
      Weight xi = Weight::from_ints(c);
      if (!xi.is_zero()) {
        if (auto s = score(xi)) {
          const double normalized = *s / std::sqrt(norm_sq(xi).get_d());
          if (!best || normalized > best_score) {
            best = xi;
            best_score = normalized;
          }
        }
      }
      std::size_t i = 0;
      while (i < rank && c[i] == radius) c[i++] = -radius;
      if (i == rank) break;
      ++c[i];
    }
    if (best) return best;
  }
  return std::nullopt;
}

LaurentPoly one_minus(const Weight& beta) {
  LaurentPoly f = LaurentPoly::constant(beta.rank());
  f.add_term(beta, -1);
  return f;
}

}  // namespace

void ConeSeries::add(ConeTerm term) {
  require_rank(term.direction, rank_, "expansion direction");
  for (const auto& b : term.denominators) {
    require_rank(b, rank_, "denominator weight");
    if (b.is_zero()) throw InvariantError("zero denominator weight in cone series");
    if (dot(b, term.direction) >= 0)
      throw InvariantError("expansion direction does not pair negatively with a denominator weight", b.str());
  }
  for (const auto& [w, c] : term.numerator.terms()) require_rank(w, rank_, "numerator exponent");
  terms_.push_back(std::move(term));
}

ConeSeries ConeSeries::negated() const {
  ConeSeries out = *this;
  for (auto& t : out.terms_) t.numerator = t.numerator.scaled(-1);
  return out;
}

ConeSeries& ConeSeries::operator+=(const ConeSeries& other) {
  if (other.rank_ != rank_ && !other.empty()) throw DomainError("rank_mismatch", "cone series of different rank");
  for (const auto& t : other.terms_) terms_.push_back(t);
  return *this;
}

Weight generic_direction(const std::vector<Weight>& betas, std::size_t rank) {
  auto found = best_on_grid(rank, [&](const Weight& xi) -> std::optional<double> {
    double worst = INFINITY;
    for (const auto& b : betas) {
      const Rational p = dot(b, xi);
      if (p == 0) return std::nullopt;
      worst = std::min(worst, std::abs(p.get_d()));
    }
    return betas.empty() ? 1.0 : worst;
  });
  if (!found) throw InvariantError("no generic expansion direction found");
  return *found;
}

Weight term_direction(const std::vector<Weight>& betas, std::size_t rank) {
  if (betas.empty()) return generic_direction({}, rank);
  Weight sum = Weight::zero(rank);
  for (const auto& b : betas) sum -= b;
  if (std::all_of(betas.begin(), betas.end(), [&](const Weight& b) { return dot(b, sum) < 0; })) return sum;
  auto found = best_on_grid(rank, [&](const Weight& xi) -> std::optional<double> {
    double worst = INFINITY;
    for (const auto& b : betas) {
      const Rational p = dot(b, xi);
      if (p >= 0) return std::nullopt;
      worst = std::min(worst, -p.get_d());
    }
    return worst;
  });
  if (!found) throw InvariantError("denominator weights do not lie in an open half-space");
  return *found;
}

ConeSeries with_direction(const ConeSeries& s, const Weight& xi) {
  ConeSeries out(s.rank());
  for (const auto& t : s.terms()) {
    ConeTerm flipped{t.numerator, {}, xi};
    for (const auto& b : t.denominators) {
      const Rational p = dot(b, xi);
      if (p == 0) throw InvariantError("direction is orthogonal to a denominator weight", b.str());
      if (p < 0) {
        flipped.denominators.push_back(b);
      } else {
        flipped.numerator = flipped.numerator * LaurentPoly::monomial(-b, -1);
        flipped.denominators.push_back(-b);
      }
    }
    out.add(std::move(flipped));
  }
  return out;
}

ConeSeries brion_series(const Polytope& p) {
  if (p.empty()) throw DomainError("empty_input", "Brion sum of an empty polytope");
  const std::size_t r = p.rank();
  std::vector<std::vector<Weight>> edges(p.vertices().size());
  std::vector<Weight> all_edges;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    edges[v] = edge_directions(p, v);
    if (static_cast<int>(edges[v].size()) != p.dim())
      throw DomainError("not_simple", "vertex is not simple", p.vertices()[v].str());
    all_edges.insert(all_edges.end(), edges[v].begin(), edges[v].end());
  }
  ConeSeries raw(r);
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    const Weight& vert = p.vertices()[v];
    LaurentPoly num;
    // Lattice points of vert + {Σ a_i e_i : 0 ≤ a_i < 1}.
    std::vector<Weight> corners{vert};
    for (const auto& e : edges[v]) {
      std::vector<Weight> more;
      for (const auto& c : corners) more.push_back(c + e);
      corners.insert(corners.end(), more.begin(), more.end());
    }
    const Polytope para = Polytope::hull(corners);
    linalg::Matrix cols;
    for (const auto& e : edges[v]) cols.push_back(linalg::Vector(e.coords().begin(), e.coords().end()));
    const linalg::Matrix a = linalg::transpose(cols);
    for (const auto& x : lattice_points(para)) {
      const Weight diff = x - vert;
      linalg::Vector rhs(diff.coords().begin(), diff.coords().end());
      auto coef = edges[v].empty() ? std::optional<linalg::Vector>(linalg::Vector{}) : linalg::solve(a, rhs);
      if (!coef) continue;
      if (std::all_of(coef->begin(), coef->end(), [](const Rational& q) { return q >= 0 && q < 1; })) num.add_term(x, 1);
    }
    raw.add({num, edges[v], term_direction(edges[v], r)});
  }
  return with_direction(raw, generic_direction(all_edges, r));
}

ConeSeries vertex_sum(const Polytope& p) {
  if (p.empty()) throw DomainError("empty_input", "vertex sum of an empty polytope");
  if (p.rank() > 3) throw DomainError("bad_rank", "vertex_sum supports rank ≤ 3");
  const auto dz = is_delzant(p, true);
  if (!dz.delzant) throw DomainError("not_delzant", "vertex_sum needs a Delzant polytope", dz.failing_vertex->str());
  return brion_series(p);
}

Rational evaluate(const ConeSeries& s, const std::vector<Rational>& point) {
  if (point.size() != s.rank()) throw DomainError("rank_mismatch", "evaluation point has the wrong rank");
  Rational total = 0;
  for (const auto& t : s.terms()) {
    Rational num = 0;
    for (const auto& [w, c] : t.numerator.terms()) num += Rational(static_cast<long>(c)) * monomial_value(w, point);
    Rational den = 1;
    for (const auto& b : t.denominators) {
      const Rational f = 1 - monomial_value(b, point);
      if (f == 0) throw DomainError("pole", "evaluation point is a pole of the series", b.str());
      den *= f;
    }
    total += num / den;
  }
  return total;
}

Box bounding_box(const Polytope& p, std::int64_t margin) {
  if (p.empty()) throw DomainError("empty_input", "bounding box of an empty polytope");
  Box box{std::vector<std::int64_t>(p.rank()), std::vector<std::int64_t>(p.rank())};
  for (std::size_t i = 0; i < p.rank(); ++i) {
    Rational mn = p.vertices().front()[i], mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    Integer f, c;
    mpz_fdiv_q(f.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    mpz_cdiv_q(c.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    box.lo[i] = f.get_si() - margin;
    box.hi[i] = c.get_si() + margin;
  }
  return box;
}

LaurentPoly expand_in_box(const ConeSeries& s, const Box& box) {
  const std::size_t r = s.rank();
  if (box.lo.size() != r || box.hi.size() != r) throw DomainError("rank_mismatch", "box has the wrong rank");
  auto inside = [&](const Weight& x) {
    for (std::size_t i = 0; i < r; ++i)
      if (x[i] < box.lo[i] || x[i] > box.hi[i]) return false;
    return true;
  };
  LaurentPoly out;
  for (const auto& t : s.terms()) {
    for (const auto& b : t.denominators)
      if (dot(b, t.direction) >= 0) throw InvariantError("expansion direction invalid for a denominator", b.str());
    // ⟨dir, ·⟩ only decreases along the series, so stop once it drops below its minimum on the box.
    Rational floor_value = 0;
    for (std::size_t i = 0; i < r; ++i)
      floor_value += std::min(t.direction[i] * box.lo[i], t.direction[i] * box.hi[i]);
    std::vector<Rational> steps;
    for (const auto& b : t.denominators) steps.push_back(dot(b, t.direction));
    for (const auto& [m, c] : t.numerator.terms()) {
      std::function<void(std::size_t, const Weight&, const Rational&)> walk = [&](std::size_t i, const Weight& x,
                                                                               const Rational& level) {
        if (i == t.denominators.size()) {
          if (inside(x)) out.add_term(x, c);
          return;
        }
        Weight y = x;
        Rational l = level;
        while (l >= floor_value) {
          walk(i + 1, y, l);
          y += t.denominators[i];
          l += steps[i];
        }
      };
      walk(0, m, dot(m, t.direction));
    }
  }
  return out;
}

namespace {

// Numerator of the series over the least common multiple of its canonical factors.
LaurentPoly common_numerator(const ConeSeries& s) {
  std::vector<std::pair<LaurentPoly, std::map<Weight, int>>> canon;
  std::map<Weight, int> lcm;
  for (const auto& t : s.terms()) {
    LaurentPoly num = t.numerator;
    std::map<Weight, int> mult;
    for (const auto& b : t.denominators) {
      const Weight cb = canonical(b);
      if (cb != b) num = num * LaurentPoly::monomial(-b, -1);  // 1/(1−t^b) = −t^{−b}/(1−t^{−b})
      ++mult[cb];
    }
    for (const auto& [b, k] : mult) lcm[b] = std::max(lcm[b], k);
    canon.emplace_back(std::move(num), std::move(mult));
  }
  LaurentPoly total;
  for (auto& [num, mult] : canon) {
    LaurentPoly term = num;
    for (const auto& [b, k] : lcm) {
      const int missing = k - (mult.count(b) ? mult.at(b) : 0);
      for (int i = 0; i < missing; ++i) term = term * one_minus(b);
    }
    total += term;
  }
  return total;
}

}  // namespace

bool equal_as_rational_functions(const ConeSeries& a, const ConeSeries& b) {
  if (a.rank() != b.rank() && !a.empty() && !b.empty()) throw DomainError("rank_mismatch", "cone series of different rank");
  ConeSeries diff(std::max(a.rank(), b.rank()));
  diff += a;
  diff += b.negated();
  return common_numerator(diff).empty();
}

ConeSeries p1_series(std::int64_t m) {
  ConeSeries s(1);
  s.add({LaurentPoly::monomial(Weight{Rational(m)}), {Weight{Rational(-2)}}, Weight{Rational(1)}});
  s.add({LaurentPoly::monomial(Weight{Rational(-m)}), {Weight{Rational(2)}}, Weight{Rational(-1)}});
  return s;
}

P1Report p1_kn_identity(std::int64_t d, std::int64_t radius) {
  if (d < 0 || d > 50) throw DomainError("bad_degree", "p1_kn_identity supports 0 ≤ d ≤ 50");
  if (radius < 0) radius = 3 * d + 3;
  if (radius < d) throw DomainError("bad_box", "box radius must be at least d");
  auto z = [](std::int64_t k) { return Weight{Rational(k)}; };
  const Weight up{Rational(-1)}, down{Rational(1)};

  P1Report report;
  for (std::int64_t k = 0; k <= d; ++k) report.lhs.add_term(z(-d + 2 * k), 1);
  ConeSeries lhs(1);
  lhs.add({report.lhs, {}, down});

  ConeSeries rhs(1);
  // Σ_{n∈Z} z^{d+2n}: z^d/(1−z²) expanded upward minus the same function expanded downward.
  rhs.add({LaurentPoly::monomial(z(d)), {z(2)}, up});
  rhs.add({LaurentPoly::monomial(z(d - 2)), {z(-2)}, down});  // −(−z^{d−2}/(1−z^{−2}))
  rhs.add({LaurentPoly::monomial(z(d + 2), -1), {z(2)}, up});
  rhs.add({LaurentPoly::monomial(z(-d - 2), -1), {z(-2)}, down});

  report.rational_identity = equal_as_rational_functions(lhs, rhs);
  report.rhs = expand_in_box(rhs, {{-radius}, {radius}});
  report.box_identity = report.rhs == report.lhs;
  return report;
}

BlowupReport blowup_chi(std::int64_t d, std::int64_t e) {
  if (std::abs(d) > 50 || std::abs(e) > 50) throw DomainError("bad_degree", "blowup_chi supports |d|, |e| ≤ 50");
  auto g = [](std::int64_t a, std::int64_t b) { return Weight{Rational(a), Rational(b)}; };
  const Weight g1 = g(1, 0), g2 = g(0, 1), u = g(-1, 1), u_inv = g(1, -1);
  auto term = [&](ConeSeries& s, const Weight& exp, std::int64_t sign, std::vector<Weight> dens) {
    s.add({LaurentPoly::monomial(exp, sign), dens, term_direction(dens, 2)});
  };

  BlowupReport out;
  term(out.literal, g(e, 0), 1, {g1, u});
  term(out.literal, g(-1, e + 1), -1, {u_inv, g2});
  term(out.literal, g(d, 0), -1, {g1, u});
  term(out.literal, g(0, d), 1, {u, g2});

  term(out.corrected, g(e, 0), 1, {g1, u});
  term(out.corrected, g(-1, e + 1), -1, {u, g2});
  term(out.corrected, g(d + 1, 0), -1, {g1, u});
  term(out.corrected, g(-1, d + 2), 1, {u, g2});

  out.literal_equals_corrected = equal_as_rational_functions(out.literal, out.corrected);
  const ConeSeries shared = with_direction(out.corrected, generic_direction({g1, g2, u}, 2));
  const std::int64_t b = std::abs(d) + std::abs(e) + 3;
  out.chi = expand_in_box(shared, {{-b, -b}, {b, b}});
  for (const auto& [w, c] : out.chi.terms()) {
    if (c > 0) {
      out.h0.push_back(w);
      out.h0_dim += c;
    } else {
      out.h1.push_back(w);
      out.h1_dim -= c;
    }
  }
  return out;
}

ConeSeries weyl_localization_series(const DominantWeight& lambda) {
  const std::size_t r = lambda.rank();
  if (r == 0) throw DomainError("bad_rank", "rank must be positive");
  std::vector<Weight> positive;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) positive.push_back(Weight::unit(r, i) - Weight::unit(r, j));
  ConeSeries s(r);
  for (const auto& w : weyl_group(r)) {
    std::vector<Weight> dens;
    for (const auto& a : positive) dens.push_back(-w.act(a));
    s.add({LaurentPoly::monomial(w.act(lambda.weight())), dens, term_direction(dens, r)});
  }
  return s;
}

LaurentPoly weyl_via_localization(const DominantWeight& lambda) {
  const std::size_t r = lambda.rank();
  if (r == 0 || r > 4) throw DomainError("bad_rank", "weyl_via_localization supports 1 ≤ r ≤ 4");
  if (!lambda.weight().is_integral()) throw DomainError("not_integral", "highest weight must be integral");
  std::vector<Weight> roots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (i != j) roots.push_back(Weight::unit(r, i) - Weight::unit(r, j));
  const ConeSeries shared = with_direction(weyl_localization_series(lambda), generic_direction(roots, r));
  return expand_in_box(shared, bounding_box(Polytope::hull(weyl_orbit(lambda.weight(), r))));
}

}  // namespace gitkit::localization
