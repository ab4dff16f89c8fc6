#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/finite_field.hpp"
#include "galhecke/exactalg/poly.hpp"
#include "galhecke/exactalg/zp.hpp"

namespace galhecke {

// Field data needed by the generic factorization code. Specialized for the
// prime field Zp (modulus prime) and for FFElem.
template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Zp> {
  static Integer order(const Zp& proto) { return Integer(static_cast<unsigned long>(proto.modulus())); }
  static std::uint64_t characteristic(const Zp& proto) { return proto.modulus(); }
  static Zp random(const Zp& proto, std::mt19937_64& rng) {
    return Zp(static_cast<std::int64_t>(rng() % proto.modulus()), proto.modulus());
  }
  static Zp pth_root(const Zp& x) { return x; }
};

template <>
struct FieldTraits<FFElem> {
  static Integer order(const FFElem& proto) { return proto.field()->order(); }
  static std::uint64_t characteristic(const FFElem& proto) { return proto.p(); }
  static FFElem random(const FFElem& proto, std::mt19937_64& rng) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(proto.field()->k()));
    for (auto& v : c) v = rng() % proto.p();
    return proto.field()->from_coeffs(std::move(c));
  }
  static FFElem pth_root(const FFElem& x) {
    const Integer& q = x.field()->order();
    return x.pow(q / Integer(static_cast<unsigned long>(x.p())));
  }
};

// 64-bit FNV-1a over the words given; used to seed splitting so outputs are
// a pure function of the inputs.
std::uint64_t fnv1a(const std::vector<std::uint64_t>& words);

template <class S>
std::vector<std::uint64_t> seed_words(const Poly<S>& f);

template <>
inline std::vector<std::uint64_t> seed_words(const Poly<Zp>& f) {
  std::vector<std::uint64_t> w{f.zero().modulus(), 1};
  for (const auto& c : f.coeffs()) w.push_back(c.value());
  return w;
}

template <>
inline std::vector<std::uint64_t> seed_words(const Poly<FFElem>& f) {
  std::vector<std::uint64_t> w{f.zero().p(), static_cast<std::uint64_t>(f.zero().field()->k())};
  for (const auto& c : f.coeffs())
    for (auto v : c.coeffs()) w.push_back(v);
  return w;
}

namespace detail {

template <class S>
Poly<S> poly_pth_root(const Poly<S>& f) {
  const std::uint64_t p = FieldTraits<S>::characteristic(f.zero());
  std::vector<S> c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(FieldTraits<S>::pth_root(f[i]));
  return Poly<S>(f.zero(), std::move(c));
}

template <class S>
Poly<S> random_poly(const S& zero, int deg_below, std::mt19937_64& rng) {
  std::vector<S> c;
  for (int i = 0; i < deg_below; ++i) c.push_back(FieldTraits<S>::random(zero, rng));
  return Poly<S>(zero, std::move(c));
}

template <class S>
void edf(const Poly<S>& f, int d, std::mt19937_64& rng, std::vector<Poly<S>>& out) {
  if (f.degree() <= d) {
    out.push_back(f);
    return;
  }
  const S zero = f.zero();
  const Integer q = FieldTraits<S>::order(zero);
  const std::uint64_t p = FieldTraits<S>::characteristic(zero);
  const Integer qd = [&] {
    Integer r = 1;
    for (int i = 0; i < d; ++i) r *= q;
    return r;
  }();
  const Poly<S> one = Poly<S>::constant(one_like(zero));
  for (;;) {
    Poly<S> a = random_poly(zero, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly<S> g = gcd(a, f);
    if (g.degree() == 0) {
      Poly<S> b;
      if (p == 2) {
        // Trace map a + a^2 + ... + a^(2^(m-1)) with 2^m = q^d.
        const std::size_t m = mpz_sizeinbase(qd.get_mpz_t(), 2) - 1;
        Poly<S> t = a % f, acc = a % f;
        for (std::size_t i = 1; i < m; ++i) {
          t = mulmod(t, t, f);
          acc = acc + t;
        }
        b = acc;
      } else {
        b = powmod(a, (qd - 1) / 2, f) - one;
      }
      g = gcd(b, f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// Squarefree decomposition of a monic polynomial: list of (factor, multiplicity).
template <class S>
std::vector<std::pair<Poly<S>, int>> squarefree_decomposition(const Poly<S>& f_in) {
  std::vector<std::pair<Poly<S>, int>> out;
  Poly<S> f = f_in.monic();
  if (f.degree() < 1) return out;
  const std::uint64_t p = FieldTraits<S>::characteristic(f.zero());
  const Poly<S> fp = f.derivative();
  if (fp.is_zero()) {
    for (auto& [g, m] : squarefree_decomposition(detail::poly_pth_root(f))) out.emplace_back(g, m * static_cast<int>(p));
    return out;
  }
  Poly<S> c = gcd(f, fp);
  Poly<S> w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly<S> y = gcd(w, c);
    Poly<S> fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(detail::poly_pth_root(c.monic()))) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

// Distinct-degree factorization of a squarefree monic polynomial.
template <class S>
std::vector<std::pair<Poly<S>, int>> distinct_degree(Poly<S> f) {
  std::vector<std::pair<Poly<S>, int>> out;
  const S zero = f.zero();
  const Integer q = FieldTraits<S>::order(zero);
  const Poly<S> x = Poly<S>::x(zero);
  Poly<S> h = x % f;
  for (int i = 1; 2 * i <= f.degree(); ++i) {
    h = powmod(h, q, f);
    Poly<S> g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

// Full factorization into monic irreducibles with multiplicities, sorted by
// degree then coefficients (low to high). Constants give an empty list.
template <class S>
std::vector<std::pair<Poly<S>, int>> factor_over_field(const Poly<S>& f) {
  std::vector<std::pair<Poly<S>, int>> out;
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  if (f.degree() < 1) return out;
  std::mt19937_64 rng(fnv1a(seed_words(f)));
  for (const auto& [sf, mult] : squarefree_decomposition(f)) {
    for (const auto& [part, d] : distinct_degree(sf)) {
      std::vector<Poly<S>> pieces;
      detail::edf(part, d, rng, pieces);
      for (auto& g : pieces) out.emplace_back(g.monic(), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

// Distinct roots in the coefficient field, ascending by lex_less.
template <class S>
std::vector<S> roots_in_field(const Poly<S>& f) {
  std::vector<S> roots;
  if (f.degree() < 1) return roots;
  const S zero = f.zero();
  const Poly<S> x = Poly<S>::x(zero);
  const Poly<S> g = f.monic();
  const Poly<S> split = gcd(powmod(x, FieldTraits<S>::order(zero), g) - x, g);
  if (split.degree() < 1) return roots;
  std::mt19937_64 rng(fnv1a(seed_words(g)));
  std::vector<Poly<S>> lin;
  detail::edf(split, 1, rng, lin);
  for (const auto& l : lin) {
    const Poly<S> m = l.monic();
    roots.push_back(zero - m[0]);
  }
  std::sort(roots.begin(), roots.end(), [](const S& a, const S& b) { return lex_less(a, b); });
  return roots;
}

using ZpPoly = Poly<Zp>;
using FFPoly = Poly<FFElem>;

std::vector<std::pair<ZpPoly, int>> factor_poly_mod_l(const IntPoly& f, std::uint64_t l);

// Monic lifts over Z/l^e (Zp with modulus l^e) of the mod-l factorization,
// in the same order. Requires f mod l squarefree with unit leading coefficient.
std::vector<ZpPoly> hensel_lift_factors(const IntPoly& f, std::uint64_t l, int e);

// Image in `target` of the class of x in F_p[x]/(m) for m the canonical
// modulus of `source` (deg source | deg target): the least root of that
// modulus in `target`.
FFElem embedding_image(const FiniteField::Ptr& source, const FiniteField::Ptr& target);
// Map an element of a subfield into a larger canonical field.
FFElem embed(const FFElem& x, const FiniteField::Ptr& target);
// Smallest canonical field containing both (degree lcm).
FiniteField::Ptr common_field(const FiniteField::Ptr& a, const FiniteField::Ptr& b);

FFPoly to_ff_poly(const IntPoly& f, const FiniteField::Ptr& field);

}  // namespace galhecke
