#include "gitkit/characters.hpp"

#include <algorithm>

#include "gitkit/error.hpp"

namespace gitkit {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw InvariantError("integer overflow in Laurent coefficient");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw InvariantError("integer overflow in Laurent coefficient");
  return out;
}

LaurentPoly LaurentPoly::monomial(const Weight& w, std::int64_t c) {
  LaurentPoly p;
  p.add_term(w, c);
  return p;
}

LaurentPoly LaurentPoly::constant(std::size_t rank, std::int64_t c) { return monomial(Weight::zero(rank), c); }

void LaurentPoly::add_term(const Weight& w, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

std::int64_t LaurentPoly::coefficient(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<Weight> LaurentPoly::support() const {
  std::vector<Weight> out;
  out.reserve(terms_.size());
  for (const auto& [w, c] : terms_) out.push_back(w);
  return out;
}

std::int64_t LaurentPoly::coefficient_sum() const {
  std::int64_t s = 0;
  for (const auto& [w, c] : terms_) s = checked_add(s, c);
  return s;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) out.add_term(wa + wb, checked_mul(ca, cb));
  return out;
}

LaurentPoly LaurentPoly::scaled(std::int64_t c) const {
  LaurentPoly out;
  if (c == 0) return out;
  for (const auto& [w, x] : terms_) out.terms_.emplace(w, checked_mul(x, c));
  return out;
}

LaurentPoly LaurentPoly::shifted(const Weight& shift) const {
  LaurentPoly out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w + shift, c);
  return out;
}

LaurentPoly LaurentPoly::mapped(const std::vector<Weight>& rows) const {
  LaurentPoly out;
  for (const auto& [w, c] : terms_) {
    Weight image = Weight::zero(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) image[i] = dot(rows[i], w);
    out.add_term(image, c);
  }
  return out;
}

// ---------------------------------------------------------------------------

LaurentPoly weyl_denominator(std::size_t r) {
  LaurentPoly d = LaurentPoly::constant(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      LaurentPoly factor = LaurentPoly::constant(r);
      factor.add_term(Weight::unit(r, j) - Weight::unit(r, i), -1);
      d = d * factor;
    }
  return d;
}

LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.empty()) throw InvariantError("division by the zero polynomial");
  LaurentPoly quotient;
  if (num.empty()) return quotient;
  const auto& [lead_w, lead_c] = *den.terms().rbegin();
  const Weight lowest = num.terms().begin()->first;
  LaurentPoly rem = num;
  while (!rem.empty()) {
    const auto& [top_w, top_c] = *rem.terms().rbegin();
    // For an exact quotient every remainder leading term stays ≥ the lowest term of num.
    if (top_w < lowest) throw InvariantError("Laurent division is not exact", top_w.str());
    if (top_c % lead_c != 0) throw InvariantError("Laurent division leaves a fractional coefficient", top_w.str());
    const Weight q_w = top_w - lead_w;
    const std::int64_t q_c = top_c / lead_c;
    quotient.add_term(q_w, q_c);
    rem -= den.shifted(q_w).scaled(q_c);
  }
  return quotient;
}

LaurentPoly weyl_character(const DominantWeight& lambda) {
  const std::size_t r = lambda.rank();
  if (r == 0 || r > 6) throw DomainError("bad_rank", "weyl_character supports 1 ≤ r ≤ 6");
  if (!lambda.weight().is_integral()) throw DomainError("not_integral", "highest weight must be integral", lambda.weight().str());
  const Weight shifted = lambda.weight() + rho(r);
  const Weight rho_r = rho(r);
  LaurentPoly numerator;
  for (const auto& w : weyl_group(r)) numerator.add_term(w.act(shifted) - rho_r, w.sign());
  LaurentPoly chi = divide_exact(numerator, weyl_denominator(r));
  for (const auto& [w, c] : chi.terms())
    if (c < 0) throw InvariantError("negative weight multiplicity in Weyl character", w.str());
  return chi;
}

LaurentPoly sl2_character(std::int64_t d) {
  if (d < 0) throw DomainError("negative_weight", "SU(2) top weight must be non-negative");
  LaurentPoly chi;
  for (std::int64_t k = -d; k <= d; k += 2) chi.add_term(Weight{Rational(k)}, 1);
  return chi;
}

// ---------------------------------------------------------------------------

const LaurentPoly& CharacterCache::character(const DominantWeight& lambda) {
  auto it = characters_.find(lambda);
  if (it == characters_.end()) it = characters_.emplace(lambda, weyl_character(lambda)).first;
  return it->second;
}

const Multiplicities& CharacterCache::tensor(const DominantWeight& a, const DominantWeight& b) {
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  auto it = tensors_.find(key);
  if (it == tensors_.end()) {
    Multiplicities m = decompose_character(character(a) * character(b), this);
    it = tensors_.emplace(std::move(key), std::move(m)).first;
  }
  return it->second;
}

Multiplicities decompose_character(LaurentPoly chi, CharacterCache* cache) {
  CharacterCache local;
  CharacterCache& memo = cache ? *cache : local;
  Multiplicities out;
  while (!chi.empty()) {
    // The lexicographically largest weight of a W-invariant character is dominant.
    const auto [top, m] = *chi.terms().rbegin();
    if (m < 0) throw InvariantError("negative multiplicity while decomposing a character", top.str());
    DominantWeight nu(std::vector<Rational>(top.coords().begin(), top.coords().end()));
    out.emplace(nu, m);
    chi -= memo.character(nu).scaled(m);
  }
  return out;
}

Multiplicities tensor_decompose(const DominantWeight& lambda, const DominantWeight& mu, CharacterCache* cache) {
  if (lambda.rank() != mu.rank()) throw DomainError("rank_mismatch", "tensor_decompose needs equal ranks");
  if (cache) return cache->tensor(lambda, mu);
  CharacterCache local;
  return local.tensor(lambda, mu);
}

std::int64_t invariant_dim(const std::vector<DominantWeight>& weights, Group group) {
  if (weights.empty()) throw DomainError("empty_input", "invariant_dim needs at least one weight");
  const std::size_t r = weights.front().rank();
  for (const auto& w : weights)
    if (w.rank() != r) throw DomainError("rank_mismatch", "invariant_dim weights have different ranks", w.weight().str());
  CharacterCache cache;
  Multiplicities current{{weights.front(), 1}};
  for (std::size_t i = 1; i < weights.size(); ++i) {
    Multiplicities next;
    for (const auto& [nu, m] : current)
      for (const auto& [kappa, k] : cache.tensor(nu, weights[i])) next[kappa] = checked_add(next[kappa], checked_mul(m, k));
    current = std::move(next);
  }
  std::int64_t dim = 0;
  for (const auto& [nu, m] : current) {
    const Weight& w = nu.weight();
    const bool scalar = std::all_of(w.coords().begin(), w.coords().end(), [&](const Rational& c) { return c == w[0]; });
    if (group == Group::GL ? w.is_zero() : (scalar && is_integer(w[0]))) dim = checked_add(dim, m);
  }
  return dim;
}

std::optional<BwbClass> bwb_cohomology(const Weight& lambda) {
  if (!lambda.is_integral()) throw DomainError("not_integral", "Borel–Weil–Bott needs an integral weight", lambda.str());
  const Weight rho_r = rho(lambda.rank());
  auto dom = dominantize(lambda + rho_r);
  if (!dom) return std::nullopt;
  Weight top = dom->dominant.weight() - rho_r;
  return BwbClass{dom->w.length(), DominantWeight(std::vector<Rational>(top.coords().begin(), top.coords().end()))};
}

}  // namespace gitkit
