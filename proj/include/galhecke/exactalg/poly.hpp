#pragma once

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/integer.hpp"

namespace galhecke {

namespace detail {
// Poly's member is_zero() hides the scalar overloads inside the class.
template <class S>
bool scalar_is_zero(const S& s) {
  return is_zero(s);
}
}  // namespace detail

// Dense univariate polynomial, coefficients low degree first. The scalar type
// S supplies zero_like/one_like/is_zero (and inverse for division); the
// stored zero element carries any runtime context S needs (a modulus, a field).
template <class S>
class Poly {
 public:
  using Scalar = S;

  Poly() = default;
  explicit Poly(S zero) : zero_(std::move(zero)) {}
  Poly(S zero, std::vector<S> coeffs) : zero_(std::move(zero)), c_(std::move(coeffs)) { trim(); }

  static Poly constant(const S& c) { return Poly(zero_like(c), {c}); }
  static Poly monomial(const S& c, int deg) {
    std::vector<S> v(static_cast<std::size_t>(deg) + 1, zero_like(c));
    v[static_cast<std::size_t>(deg)] = c;
    return Poly(zero_like(c), std::move(v));
  }
  // The polynomial x over the same scalar context as `like`.
  static Poly x(const S& like) { return monomial(one_like(like), 1); }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<S>& coeffs() const noexcept { return c_; }
  const S& zero() const noexcept { return zero_; }
  S one() const { return one_like(zero_); }

  const S& operator[](int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero_;
    return c_[static_cast<std::size_t>(i)];
  }
  const S& lead() const { return (*this)[degree()]; }

  S operator()(const S& x) const {
    S acc = zero_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<S> v;
    for (std::size_t i = 1; i < c_.size(); ++i) {
      S k = zero_;
      const S one = one_like(zero_);
      for (std::size_t j = 0; j < i; ++j) k = k + one;
      v.push_back(c_[i] * k);
    }
    return Poly(zero_, std::move(v));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    const S li = inverse(lead());
    return *this * li;
  }

  Poly operator+(const Poly& o) const {
    std::vector<S> v(std::max(c_.size(), o.c_.size()), zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
    return Poly(zero_, std::move(v));
  }
  Poly operator-() const {
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(zero_ - a);
    return Poly(zero_, std::move(v));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(zero_);
    std::vector<S> v(c_.size() + o.c_.size() - 1, zero_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (detail::scalar_is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] = v[i + j] + c_[i] * o.c_[j];
    }
    return Poly(zero_, std::move(v));
  }
  Poly operator*(const S& s) const {
    std::vector<S> v;
    v.reserve(c_.size());
    for (const auto& a : c_) v.push_back(a * s);
    return Poly(zero_, std::move(v));
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!(c_[i] == o.c_[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Shift by x^k.
  Poly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<S> v(static_cast<std::size_t>(k), zero_);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(zero_, std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
  }

  S zero_{};
  std::vector<S> c_;
};

template <class S>
Poly<S> operator*(const S& s, const Poly<S>& p) {
  return p * s;
}

// Division with remainder; the divisor's leading coefficient must be invertible.
template <class S>
std::pair<Poly<S>, Poly<S>> divmod(const Poly<S>& a, const Poly<S>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const S zero = a.zero();
  if (a.degree() < b.degree()) return {Poly<S>(zero), a};
  const S li = inverse(b.lead());
  std::vector<S> r = a.coeffs();
  std::vector<S> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), zero);
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    const S c = r[static_cast<std::size_t>(i)] * li;
    q[static_cast<std::size_t>(i - db)] = c;
    if (is_zero(c)) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = slot - c * b[j];
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<S>(zero, std::move(q)), Poly<S>(zero, std::move(r))};
}

template <class S>
Poly<S> operator/(const Poly<S>& a, const Poly<S>& b) {
  return divmod(a, b).first;
}

template <class S>
Poly<S> operator%(const Poly<S>& a, const Poly<S>& b) {
  return divmod(a, b).second;
}

// Monic gcd over a field.
template <class S>
Poly<S> gcd(Poly<S> a, Poly<S> b) {
  while (!b.is_zero()) {
    Poly<S> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Extended gcd over a field: s*a + t*b = g with g monic.
template <class S>
struct PolyBezout {
  Poly<S> g, s, t;
};

template <class S>
PolyBezout<S> xgcd(const Poly<S>& a, const Poly<S>& b) {
  const S zero = a.zero();
  Poly<S> r0 = a, r1 = b;
  Poly<S> s0 = Poly<S>::constant(one_like(zero)), s1(zero);
  Poly<S> t0(zero), t1 = Poly<S>::constant(one_like(zero));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<S> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<S> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const S li = inverse(r0.lead());
  return {r0 * li, s0 * li, t0 * li};
}

template <class S>
Poly<S> mulmod(const Poly<S>& a, const Poly<S>& b, const Poly<S>& m) {
  return (a * b) % m;
}

template <class S>
Poly<S> powmod(Poly<S> base, Integer e, const Poly<S>& m) {
  if (sgn(e) < 0) throw DomainError("powmod: negative exponent");
  Poly<S> result = Poly<S>::constant(one_like(base.zero())) % m;
  base = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, base, m);
  }
  return result;
}

template <class S>
Poly<S> pow(const Poly<S>& base, unsigned e) {
  Poly<S> r = Poly<S>::constant(one_like(base.zero()));
  for (unsigned i = 0; i < e; ++i) r = r * base;
  return r;
}

// Evaluate p at x where x lives in a different ring T; `embed` maps
// coefficients S -> T.
template <class S, class T, class Embed>
T evaluate(const Poly<S>& p, const T& x, Embed embed) {
  T acc = zero_like(x);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + embed(*it);
  return acc;
}

template <class T, class S, class Map>
Poly<T> map_coeffs(const Poly<S>& p, const T& zero, Map f) {
  std::vector<T> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(f(c));
  return Poly<T>(zero, std::move(v));
}

// Deterministic order: by degree, then coefficients compared low to high.
template <class S>
bool poly_less(const Poly<S>& a, const Poly<S>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return false;
}

// Render as e.g. "x^3 + 2*x^2 + 3"; `fmt` prints a scalar.
template <class S, class Fmt>
std::string format_poly(const Poly<S>& p, const std::string& var, Fmt fmt) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    if (is_zero(p[i])) continue;
    std::string c = fmt(p[i]);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    const bool unit = c == "1";
    if (i == 0) os << c;
    else {
      if (!unit) os << c << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

template <class S>
std::string format_poly(const Poly<S>& p, const std::string& var = "x") {
  return format_poly(p, var, [](const S& s) {
    std::ostringstream o;
    o << s;
    return o.str();
  });
}

// Coefficient list low degree first, whitespace separated (the on-disk form).
template <class S>
std::string coeff_list(const Poly<S>& p) {
  std::ostringstream os;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) os << ' ';
    os << p[i];
  }
  if (p.is_zero()) os << '0';
  return os.str();
}

using IntPoly = Poly<Integer>;
using QPoly = Poly<Rational>;

IntPoly int_poly(std::initializer_list<long> coeffs_low_first);
QPoly to_qpoly(const IntPoly& f);
// Requires integral coefficients.
IntPoly to_intpoly(const QPoly& f);
IntPoly parse_int_poly(const std::string& whitespace_separated_coeffs);

// gcd of the numerators over lcm of the denominators (0 for the zero polynomial).
Rational rational_content(const QPoly& f);
Integer content(const IntPoly& f);

}  // namespace galhecke
