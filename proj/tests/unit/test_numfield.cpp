#include "doctest.h"
#include "galhecke/exactalg/polyfactor.hpp"
#include "galhecke/exactalg/real_roots.hpp"
#include "galhecke/numfield/number_field.hpp"
#include "galhecke/numfield/relative.hpp"
#include "galhecke/numfield/two_adic.hpp"
#include "galhecke/errors.hpp"

#include <random>

using namespace galhecke;

namespace {

const char* kG277 =
    "9417 + 787a - 51a^2 - 133a^3 + 1359b - 627ab - 468a^2b + 114a^3b - 345b^2 - 216ab^2 + 57a^2b^2";

NumberField::Ptr field277() { return NumberField::create(int_poly({1, 3, -16, -1, 1})); }

NFElem s277(const NumberField::Ptr& F) {
  return F->from_coords({Rational(347661), Rational(2034265), Rational(193305), Rational(-150700)});
}

}  // namespace

TEST_CASE("p = 277 relative norm and content") {
  auto F = field277();
  const NFElem r = rel_norm(kG277, F);
  const auto cr = content_removed(r);
  MESSAGE("r = " << r.to_string() << "  N = " << cr.n);
  CHECK(cr.s == s277(F));
}

TEST_CASE("p = 277 norms, traces, content") {
  auto F = field277();
  const NFElem s = s277(F);
  CHECK(nf_norm(s) == Rational(Integer("10483965209607696")));
  CHECK(nf_trace(s) == 3775974);
  CHECK(charpoly_content(s * Rational(1, 2)) == Rational(1, 4));
  CHECK_FALSE(is_integral(s * Rational(1, 2)));
  const NFElem a = F->gen();
  // f(-1) = -16; the ideal (a+1) has absolute norm 16.
  CHECK(nf_norm(a + F->one()) == -16);
  CHECK(abs(nf_norm(a + F->one())) == 16);
  const NFElem q = (a - F->one()) * (a - F->one()) / (a + F->one());
  CHECK(is_integral(q));
  CHECK(mpz_odd_p(nf_norm(q).get_num_mpz_t()));
  CHECK(totally_positive(s));
  CHECK(galois_group_is_A4(F->poly()));
}

TEST_CASE("p = 277 at 2") {
  auto F = field277();
  const NFElem s = s277(F);
  // s = a^2 + a + 1 mod 4, coordinatewise
  const std::vector<long> want{1, 1, 1, 0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(mod_floor(Integer(s.coords()[i].get_num()), Integer(4)) == want[i]);
  CHECK_FALSE(dedekind_p_maximal(F->poly(), 2));
  CHECK(dedekind_p_maximal(F->poly(), 277));
  const auto ctx = TwoAdicContext::compute(F);
  CHECK(ctx.index2() == 4);
  CHECK(ctx.unramified());
  int total = 0;
  for (const auto& pr : ctx.primes2()) total += pr.residue_degree;
  CHECK(total == 4);
  CHECK(two_adic_unramified(s, ctx));
  // (a-1)^2/(a+1) lies in the 2-maximal order
  const NFElem a = F->gen();
  CHECK(ctx.order().contains((a - F->one()) * (a - F->one()) / (a + F->one())));
  // a supplied basis gives the same order
  const auto ctx2 = TwoAdicContext::from_basis(F, ctx.basis2());
  CHECK(ctx2.index2() == 4);
  CHECK(ctx2.rounds() == 0);
  CHECK(two_adic_unramified(s, ctx2));
  CHECK(two_adic_unramified(F->one() + s * Rational(4), ctx));
}

TEST_CASE("two_adic_unramified against brute force in Q(sqrt(-7))") {
  // x^2 - x + 2: 2 splits, a = 2 or 3 mod 4 at the two primes; unit squares mod 4 are {1}.
  auto F = NumberField::create(int_poly({2, -1, 1}));
  const auto ctx = TwoAdicContext::compute(F);
  CHECK(ctx.index2() == 1);
  CHECK(ctx.primes2().size() == 2);
  int checked = 0;
  for (long c0 = -6; c0 <= 6; ++c0)
    for (long c1 = -6; c1 <= 6; ++c1) {
      const NFElem s = F->from_coords({Rational(c0), Rational(c1)});
      std::vector<long> comps;
      for (long r : {2L, 3L}) {
        const long v = ((c0 + c1 * r) % 4 + 4) % 4;
        if (v % 2 == 1) comps.push_back(v);
      }
      if (comps.empty()) {
        CHECK_THROWS_AS(two_adic_unramified(s, ctx), DomainError);
        continue;
      }
      if (comps.size() == 2 && comps[0] != comps[1]) continue;
      CHECK(two_adic_unramified(s, ctx) == (comps[0] == 1));
      ++checked;
    }
  CHECK(checked > 50);
}

TEST_CASE("two-adic: inert and ramified fields") {
  auto F = NumberField::create(int_poly({-1, -1, 1}));
  CHECK(dedekind_p_maximal(F->poly(), 2));
  const auto ctx = TwoAdicContext::compute(F);
  REQUIRE(ctx.primes2().size() == 1);
  CHECK(ctx.primes2()[0].residue_degree == 2);
  CHECK(two_adic_unramified(F->from_rational(5), ctx));
  CHECK(two_adic_unramified(F->gen() * F->gen(), ctx));
  auto R = NumberField::create(int_poly({-17, 0, 1}));
  CHECK_FALSE(dedekind_p_maximal(R->poly(), 2));
  const auto rctx = TwoAdicContext::compute(R);
  CHECK(rctx.index2() == 2);
  CHECK(rctx.primes2().size() == 2);
  auto Q2 = NumberField::create(int_poly({-3, 0, 1}));
  const auto qctx = TwoAdicContext::compute(Q2);
  CHECK_FALSE(qctx.unramified());
  CHECK_THROWS_AS(two_adic_unramified(Q2->one(), qctx), UndeterminedError);
}

TEST_CASE("numfield properties") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  auto F = field277();
  auto rnd = [&] {
    return F->from_coords({Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
  };
  const auto fl = factor_poly_mod_l(F->poly(), 5);
  for (int it = 0; it < 25; ++it) {
    const NFElem x = rnd(), y = rnd();
    CHECK(nf_norm(x * y) == nf_norm(x) * nf_norm(y));
    CHECK(nf_trace(x + y) == nf_trace(x) + nf_trace(y));
    const QPoly cp = nf_charpoly(x);
    NFElem acc = F->zero();
    for (int i = cp.degree(); i >= 0; --i) acc = acc * x + F->from_rational(cp[i]);
    CHECK(acc.is_zero());
    for (const auto& [fac, e] : fl) {
      CHECK(residue_image(x + y, 5, fac) == residue_image(x, 5, fac) + residue_image(y, 5, fac));
      CHECK(residue_image(x * y, 5, fac) == residue_image(x, 5, fac) * residue_image(y, 5, fac));
    }
    if (!x.is_zero()) CHECK(totally_positive(x * x));
  }
  std::uniform_int_distribution<long> small(-3, 3);
  auto rbi = [&] {
    BiPoly g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const long c = small(rng);
        if (c) g.terms[{i, j}] = c;
      }
    return g;
  };
  for (int it = 0; it < 8; ++it) {
    const BiPoly g1 = rbi(), g2 = rbi();
    CHECK(rel_norm(g1 * g2, F) == rel_norm(g1, F) * rel_norm(g2, F));
  }
  CHECK_FALSE(totally_positive(-F->one()));
}

namespace {

struct Iv {
  Rational lo, hi;
};
Iv operator+(const Iv& x, const Iv& y) { return {x.lo + y.lo, x.hi + y.hi}; }
Iv operator*(const Iv& x, const Iv& y) {
  const Rational c[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  Iv r{c[0], c[0]};
  for (const auto& v : c) {
    if (v < r.lo) r.lo = v;
    if (v > r.hi) r.hi = v;
  }
  return r;
}

// Isolate each real root of f into (lo, hi] by bisection on Sturm counts.
std::vector<Iv> isolate(const IntPoly& f) {
  const Rational b = root_bound(to_qpoly(f)) + 1;
  std::vector<Iv> todo{{-b, b}}, out;
  while (!todo.empty()) {
    const Iv iv = todo.back();
    todo.pop_back();
    const int c = real_root_count_in(f, iv.lo, iv.hi);
    if (c == 0) continue;
    if (c == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational m = (iv.lo + iv.hi) / 2;
    todo.push_back({iv.lo, m});
    todo.push_back({m, iv.hi});
  }
  return out;
}

int sign_at(const NFElem& x, Iv root, const IntPoly& f) {
  for (;;) {
    Iv acc{0, 0};
    const auto& c = x.coords();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * root + Iv{c[i], c[i]};
    if (acc.lo > 0) return 1;
    if (acc.hi < 0) return -1;
    const Rational m = (root.lo + root.hi) / 2;
    if (real_root_count_in(f, root.lo, m) == 1) root.hi = m;
    else root.lo = m;
  }
}

}  // namespace

TEST_CASE("totally_positive agrees with interval sign evaluation") {
  auto F = field277();
  const auto roots = isolate(F->poly());
  REQUIRE(roots.size() == 4);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-20, 20);
  int pos = 0;
  for (int it = 0; it < 100; ++it) {
    NFElem x = F->from_coords({Rational(d(rng)), Rational(d(rng)), Rational(d(rng)), Rational(d(rng))});
    if (it % 3 == 0) x = x * x + F->from_rational(d(rng));
    if (x.is_zero()) continue;
    bool all_pos = true;
    for (const auto& r : roots) all_pos = all_pos && sign_at(x, r, F->poly()) > 0;
    CHECK(totally_positive(x) == all_pos);
    pos += all_pos;
  }
  CHECK(pos > 5);
}
