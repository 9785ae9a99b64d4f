#include "gitkit/lie_kernel.hpp"

#include <algorithm>
#include <numeric>

#include "gitkit/error.hpp"

namespace gitkit {

Weight Weight::unit(std::size_t rank, std::size_t i) {
  Weight w = zero(rank);
  w[i] = 1;
  return w;
}

Weight Weight::from_ints(std::span<const long> values) {
  std::vector<Rational> c;
  c.reserve(values.size());
  for (long v : values) c.emplace_back(v);
  return Weight(std::move(c));
}

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool Weight::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return is_integer(q); });
}

Weight& Weight::operator+=(const Weight& other) {
  require_rank(other, rank(), "weight addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  require_rank(other, rank(), "weight subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Weight& Weight::operator*=(const Rational& s) {
  for (auto& c : coords_) c *= s;
  return *this;
}

Weight Weight::operator-() const {
  Weight out = *this;
  for (auto& c : out.coords_) c = -c;
  return out;
}

bool operator==(const Weight& a, const Weight& b) {
  if (a.rank() != b.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (a.coords_[i] != b.coords_[i]) return false;
  return true;
}

std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
  const std::size_t n = std::min(a.rank(), b.rank());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.rank() <=> b.rank();
}

std::string Weight::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += to_string(coords_[i]);
  }
  return s + ")";
}

Rational dot(const Weight& a, const Weight& b) {
  require_rank(b, a.rank(), "dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rational norm_sq(const Weight& a) { return dot(a, a); }

std::vector<double> to_doubles(const Weight& w) {
  std::vector<double> out(w.rank());
  for (std::size_t i = 0; i < w.rank(); ++i) out[i] = w[i].get_d();
  return out;
}

void require_rank(const Weight& a, std::size_t expected, const char* what) {
  if (a.rank() != expected)
    throw DomainError("rank_mismatch",
                      std::string(what) + ": expected rank " + std::to_string(expected) + ", got " +
                          std::to_string(a.rank()),
                      a.str());
}

// ---------------------------------------------------------------------------

namespace {

std::size_t inversions(const std::vector<std::size_t>& p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++n;
  return n;
}

}  // namespace

WeylElement::WeylElement(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t v : perm_) {
    if (v >= perm_.size() || seen[v]) throw DomainError("bad_permutation", "not a permutation");
    seen[v] = true;
  }
  length_ = inversions(perm_);
}

WeylElement WeylElement::identity(std::size_t r) {
  std::vector<std::size_t> p(r);
  std::iota(p.begin(), p.end(), 0);
  return WeylElement(std::move(p));
}

Weight WeylElement::act(const Weight& mu) const {
  require_rank(mu, rank(), "Weyl action");
  Weight out = Weight::zero(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[perm_[i]] = mu[i];
  return out;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  if (other.rank() != rank()) throw DomainError("rank_mismatch", "Weyl composition of different ranks");
  std::vector<std::size_t> p(rank());
  for (std::size_t i = 0; i < rank(); ++i) p[i] = perm_[other.perm_[i]];
  return WeylElement(std::move(p));
}

WeylElement WeylElement::inverse() const {
  std::vector<std::size_t> p(rank());
  for (std::size_t i = 0; i < rank(); ++i) p[perm_[i]] = i;
  return WeylElement(std::move(p));
}

std::vector<WeylElement> weyl_group(std::size_t r) {
  std::vector<std::size_t> p(r);
  std::iota(p.begin(), p.end(), 0);
  std::vector<WeylElement> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// ---------------------------------------------------------------------------

DominantWeight::DominantWeight(std::vector<Rational> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i + 1 < parts_.rank(); ++i)
    if (parts_[i] < parts_[i + 1]) throw DomainError("not_dominant", "weight is not weakly decreasing", parts_.str());
}

DominantWeight::DominantWeight(std::initializer_list<long> parts)
    : DominantWeight([&] {
        std::vector<Rational> v;
        for (long p : parts) v.emplace_back(p);
        return v;
      }()) {}

DominantWeight sl2_highest(const Rational& spin) {
  if (spin < 0) throw DomainError("negative_spin", "SU(2) spin must be non-negative", to_string(spin));
  Rational d = 2 * spin;
  if (!is_integer(d)) throw DomainError("bad_spin", "SU(2) spin must be a half-integer", to_string(spin));
  return DominantWeight(std::vector<Rational>{d, 0});
}

Integer sl2_top_weight(const DominantWeight& lambda) {
  if (lambda.rank() != 2) throw DomainError("rank_mismatch", "SU(2) label needs a rank-2 weight");
  Rational d = lambda[0] - lambda[1];
  if (!is_integer(d)) throw DomainError("not_integral", "SU(2) top weight is not integral");
  return d.get_num();
}

std::vector<Weight> weyl_orbit(const Weight& lambda, std::size_t r) {
  require_rank(lambda, r, "weyl_orbit");
  std::vector<Rational> c(lambda.coords().begin(), lambda.coords().end());
  std::sort(c.begin(), c.end());
  std::vector<Weight> out;
  do {
    out.emplace_back(c);
  } while (std::next_permutation(c.begin(), c.end()));
  return out;
}

Weight rho(std::size_t r) {
  if (r == 0) throw DomainError("bad_rank", "rank must be at least 1");
  Weight w = Weight::zero(r);
  for (std::size_t i = 0; i < r; ++i) w[i] = static_cast<long>(r - 1 - i);
  return w;
}

std::optional<Dominantized> dominantize(const Weight& mu) {
  const std::size_t r = mu.rank();
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  // Stable sort by decreasing entry; order[k] = source index of the k-th largest.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mu[a] > mu[b]; });
  for (std::size_t k = 0; k + 1 < r; ++k)
    if (mu[order[k]] == mu[order[k + 1]]) return std::nullopt;
  std::vector<std::size_t> perm(r);
  for (std::size_t k = 0; k < r; ++k) perm[order[k]] = k;
  WeylElement w(std::move(perm));
  Weight sorted = w.act(mu);
  return Dominantized{std::move(w), DominantWeight(std::vector<Rational>(sorted.coords().begin(), sorted.coords().end()))};
}

}  // namespace gitkit
