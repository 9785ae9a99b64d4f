#include "gitkit/rational.hpp"

#include <limits>

#include "gitkit/error.hpp"

namespace gitkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("bad_rational", "malformed rational '" + std::string(whole) + "'");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw DomainError("bad_rational", "empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), s);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw DomainError("bad_rational", "malformed rational '" + std::string(s) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw DomainError("bad_rational", "zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (!frac.empty() && !all_digits(frac)) throw DomainError("bad_rational", "malformed rational '" + std::string(s) + "'");
    std::string_view digits = int_part;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() && frac.empty()) throw DomainError("bad_rational", "malformed rational '" + std::string(s) + "'");
    Integer whole = digits.empty() ? Integer(0) : parse_integer(digits, s);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac), 10);
    Rational q(whole * scale + f, scale);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::string_view s = trim(text);
  if (s.empty()) return out;
  while (true) {
    auto comma = s.find(',');
    out.push_back(parse_rational(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw DomainError("not_integral", "expected an integer, got " + to_string(q));
  const Integer& z = q.get_num();
  if (!z.fits_slong_p()) throw DomainError("overflow", "integer does not fit in 64 bits: " + to_string(q));
  return z.get_si();
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace gitkit
