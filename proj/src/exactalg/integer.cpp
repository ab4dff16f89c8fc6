#include "galhecke/exactalg/integer.hpp"

#include <algorithm>

#include "galhecke/errors.hpp"

namespace galhecke {

Integer inverse(const Integer& x) {
  if (x == 1 || x == -1) return x;
  throw DomainError("integer " + x.get_str() + " is not a unit");
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Integer parse_integer(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Integer out;
  if (t.empty() || out.set_str(t, 10) != 0) throw ValidationError("not an integer: '" + text + "'");
  return out;
}

Rational parse_rational(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Rational out;
  if (t.empty() || out.set_str(t, 10) != 0) throw ValidationError("not a rational: '" + text + "'");
  if (sgn(out.get_den()) == 0) throw ValidationError("zero denominator: '" + text + "'");
  out.canonicalize();
  return out;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Bezout xgcd(const Integer& a, const Integer& b) {
  Bezout out;
  mpz_gcdext(out.g.get_mpz_t(), out.u.get_mpz_t(), out.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

bool is_perfect_square(const Integer& x) {
  if (sgn(x) < 0) return false;
  return mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

Integer isqrt(const Integer& x) {
  if (sgn(x) < 0) throw DomainError("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n) {
  if (sgn(n) == 0) throw DomainError("factor_integer(0)");
  Integer m = abs(n);
  std::vector<std::pair<Integer, int>> out;
  auto strip = [&](const Integer& d) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      m /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (Integer d = 5; d * d <= m; d += 6) {
    strip(d);
    Integer d2 = d + 2;
    strip(d2);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [q, e] : factor_integer(n)) out.push_back(q);
  return out;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const auto& [q, e] : factor_integer(n)) {
    const std::size_t base = out.size();
    Integer pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (sgn(r) < 0) r += abs(m);
  return r;
}

std::uint64_t to_u64(const Integer& x) {
  if (sgn(x) < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64) throw DomainError("integer does not fit in 64 bits: " + x.get_str());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

long to_long(const Integer& x) {
  if (!x.fits_slong_p()) throw DomainError("integer does not fit in a long: " + x.get_str());
  return x.get_si();
}

int legendre(const Integer& a, const Integer& p) {
  return mpz_legendre(mod_floor(a, p).get_mpz_t(), p.get_mpz_t());
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1 % mod;
  unsigned __int128 b = base % mod;
  while (exp) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::uint64_t>(result);
}

}  // namespace galhecke
