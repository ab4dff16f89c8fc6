#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace galhecke {

using Integer = mpz_class;
using Rational = mpq_class;

// Scalar protocol used by the generic polynomial and matrix code. Every
// coefficient type provides zero_like / one_like / is_zero / inverse and a
// total order lex_less used for deterministic sorting.
inline Integer zero_like(const Integer&) { return 0; }
inline Integer one_like(const Integer&) { return 1; }
inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool lex_less(const Integer& a, const Integer& b) { return a < b; }
// Units of Z only; generic code dividing by a non-unit integer is a bug.
Integer inverse(const Integer& x);

inline Rational zero_like(const Rational&) { return 0; }
inline Rational one_like(const Rational&) { return 1; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational inverse(const Rational& x) { return Rational(1) / x; }
inline bool lex_less(const Rational& a, const Rational& b) { return a < b; }

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

Integer parse_integer(const std::string& text);
Rational parse_rational(const std::string& text);

Integer ipow(const Integer& base, unsigned long exp);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Extended gcd: returns (g, u, v) with u*a + v*b = g >= 0.
struct Bezout {
  Integer g, u, v;
};
Bezout xgcd(const Integer& a, const Integer& b);

bool is_perfect_square(const Integer& x);
Integer isqrt(const Integer& x);
bool is_probable_prime(const Integer& n);

// Trial-division factorization; intended for the small inputs of this
// library (cyclotomic values, class numbers, conductors).
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);
std::vector<Integer> prime_divisors(const Integer& n);
std::vector<Integer> divisors(const Integer& n);

// Symmetric residue helpers.
Integer mod_floor(const Integer& a, const Integer& m);
std::uint64_t to_u64(const Integer& x);
long to_long(const Integer& x);

// Kronecker-style Legendre symbol (a | p) for odd prime p.
int legendre(const Integer& a, const Integer& p);

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

}  // namespace galhecke
