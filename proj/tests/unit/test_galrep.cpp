#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <random>

#include "doctest.h"
#include "galhecke/errors.hpp"
#include "galhecke/exactalg/matrix.hpp"
#include "galhecke/exactalg/real_roots.hpp"
#include "galhecke/galrep/galois_rep.hpp"

using namespace galhecke;

namespace {

A4Atom atom277() {
  A4Atom a;
  a.p = 277;
  a.f = int_poly({1, 3, -16, -1, 1});
  auto F = NumberField::create(a.f);
  a.s = F->from_coords({Rational(347661), Rational(2034265), Rational(193305), Rational(-150700)});
  a.realquad = 1;
  return a;
}

std::vector<long> poly_ints(const FFPoly& f) {
  std::vector<long> v;
  for (const auto& c : f.coeffs()) v.push_back(static_cast<long>(c.as_prime_field()));
  return v;
}

bool usable(std::uint64_t l, const Integer& disc) {
  return l != 2 && l != 277 && is_probable_prime(Integer(static_cast<unsigned long>(l))) &&
         !mpz_divisible_ui_p(disc.get_mpz_t(), l);
}

// Brute-force conductor: least M | N with chi trivial on units = 1 mod M.
std::uint64_t conductor_oracle(const DirichletChar& chi) {
  const std::uint64_t N = chi.modulus();
  for (std::uint64_t M = 1; M <= N; ++M) {
    if (N % M) continue;
    bool ok = true;
    for (std::uint64_t a = 1; a < N && ok; ++a)
      if (std::gcd(a, N) == 1 && a % M == 1 % M && !chi(static_cast<std::int64_t>(a)).is_one()) ok = false;
    if (ok) return M;
  }
  return N;
}

}  // namespace

TEST_CASE("unit generators and Dirichlet characters") {
  for (std::uint64_t N : {1u, 2u, 4u, 8u, 15u, 16u, 24u, 45u, 77u, 100u}) {
    const auto gens = unit_generators(N);
    std::uint64_t prod = 1;
    for (const auto& g : gens) prod *= g.order;
    std::uint64_t phi = 0;
    for (std::uint64_t a = 1; a <= N; ++a) phi += std::gcd(a, N) == 1;
    CHECK(prod == phi);
    // the generators generate
    std::set<std::uint64_t> seen{1 % N};
    std::vector<std::uint64_t> frontier{1 % N};
    while (!frontier.empty()) {
      const auto x = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        const auto y = x * g.value % N;
        if (seen.insert(y).second) frontier.push_back(y);
      }
    }
    CHECK(seen.size() == phi);
  }
  const auto F = FiniteField::get(13, 1);
  const auto q5 = DirichletChar::quadratic(F, 5);
  CHECK(q5.conductor() == 5);
  CHECK(q5.parity() == 1);
  CHECK(q5(2) == F->from_int(std::int64_t{-1}));
  CHECK(q5(4).is_one());
  CHECK(q5(5).is_zero());
  const auto q3 = DirichletChar::quadratic(F, 3);
  CHECK(q3.parity() == -1);
  const auto prod = q5 * q3;
  CHECK(prod.modulus() == 15);
  CHECK(prod.conductor() == 15);
  CHECK((prod * q3).same_primitive(q5));
  CHECK(q5.lift_to(40).conductor() == 5);
  CHECK(q5.lift_to(40).conductor_exponent(5) == 1);
  CHECK(q5.lift_to(40).conductor_exponent(2) == 0);
  CHECK(q5.pow(2).is_trivial());
  CHECK(q5.inv() == q5);

  // random characters mod 60 into F_13 (values 12th roots of unity) vs the oracle
  std::mt19937_64 rng(7);
  const auto gens = unit_generators(60);
  const FFElem g = F->generator();
  for (int it = 0; it < 25; ++it) {
    std::vector<FFElem> vals;
    for (const auto& ug : gens) {
      const std::uint64_t step = 12 / ug.order;
      vals.push_back(g.pow(Integer(static_cast<unsigned long>(step * (rng() % ug.order)))));
    }
    const auto chi = DirichletChar::from_generators(F, 60, vals);
    CHECK(chi.conductor() == conductor_oracle(chi));
    for (std::int64_t a = 1; a < 60; ++a)
      for (std::int64_t b = 1; b < 60; ++b)
        if (std::gcd(a * b, std::int64_t{60}) == 1 && (a + b) % 7 == 0) CHECK(chi(a * b) == chi(a) * chi(b));
    CHECK(chi.primitive().modulus() == chi.conductor());
  }
  CHECK_THROWS_AS(DirichletChar::from_generators(F, 5, {F->from_int(std::int64_t{3})}), ValidationError);
}

TEST_CASE("p = 277 worked example at l = 5") {
  const auto A = GaloisRep::a4hat(atom277());
  const auto cls = a4_frob_class(A->a4->f, *A->a4->s, 5);
  CHECK(cls.label == A4Class::three_cycle);
  CHECK(cls.lift_order == 3);
  const auto rho = GaloisRep::direct_sum({GaloisRep::twist(A, -92), GaloisRep::omega_power(277, 1)});
  CHECK(rho->dim() == 3);
  const FFPoly P = frob_charpoly(rho, 5);
  CHECK(poly_ints(P) == std::vector<long>{1, 155, 147, 251});
  CHECK(format_ff_poly(P) == "251*X^3 + 147*X^2 + 155*X + 1");
  // the first factor written out: 1 - 5^-92 (-1) X + 5^-184 X^2
  const auto F = FiniteField::get(277, 1);
  const FFElem u = F->from_int(std::int64_t{5}).inv();
  const FFPoly first(F->zero(), {F->one(), u.pow(92), u.pow(184)});
  CHECK(frob_charpoly(GaloisRep::twist(A, -92), 5) == first);
  CHECK(inertia_exponents(GaloisRep::twist(A, -92)) == std::vector<std::vector<long>>{{0, 92}});
  CHECK(inertia_exponents(rho) == std::vector<std::vector<long>>{{0, 92}, {1}});
  CHECK_THROWS_AS(frob_charpoly(rho, 277), DataGapError);
  CHECK_THROWS_AS(frob_charpoly(rho, 2), DataGapError);
}

TEST_CASE("A4-hat Frobenius classes") {
  const A4Atom a = atom277();
  const Integer disc = poly_discriminant(a.f);
  // oracle: first l > 5 where f mod l has two quadratic factors
  std::uint64_t l22 = 0;
  for (std::uint64_t l = 7; !l22; l += 2) {
    if (!usable(l, disc)) continue;
    const auto fac = factor_poly_mod_l(a.f, l);
    if (fac.size() == 2 && fac[0].first.degree() == 2 && fac[1].first.degree() == 2) l22 = l;
  }
  const auto c = a4_frob_class(a.f, *a.s, l22);
  CHECK(c.label == A4Class::double_transposition);
  CHECK(c.lift_order == 4);
  const auto A = GaloisRep::a4hat(a);
  CHECK(poly_ints(frob_charpoly(A, l22)) == std::vector<long>{1, 0, 1});
  // classes seen over a range; traces agree with lift orders
  std::map<int, int> seen;
  for (std::uint64_t l = 3; l < 400; l += 2) {
    if (!usable(l, disc)) continue;
    const auto k = a4_frob_class(a.f, *a.s, l);
    ++seen[k.lift_order];
    const long t = (277 - static_cast<long>(poly_ints(frob_charpoly(A, l))[1])) % 277;
    CHECK(t == (a4hat_trace(k.lift_order) + 277) % 277);
  }
  for (int o : {1, 2, 3, 4, 6}) CHECK(seen[o] > 0);
  // e6 = e3 twisted by omega^((p-1)/2): X coefficient scaled by the Legendre symbol
  const auto A6 = GaloisRep::a4hat(a, A4Lift::e6);
  for (std::uint64_t l = 3; l < 100; l += 2) {
    if (!usable(l, disc)) continue;
    const auto p3 = poly_ints(frob_charpoly(A, l)), p6 = poly_ints(frob_charpoly(A6, l));
    const long leg = legendre(Integer(static_cast<unsigned long>(l)), Integer(277));
    CHECK((p6[1] - leg * p3[1]) % 277 == 0);
    CHECK(p6[2] == 1);
  }
  CHECK(inertia_exponents(A6) == std::vector<std::vector<long>>{{92 + 138, (184 + 138) % 276}});
  CHECK_THROWS_AS(a4_frob_class(int_poly({-1, 0, 0, 0, 1}), *a.s, 3), DomainError);
  CHECK_THROWS_AS(a4_frob_class(a.f, *a.s, 277), DataGapError);
}

TEST_CASE("A4-hat trace table is self-verified") {
  CHECK(verify_a4hat_trace_table(FiniteField::get(3, 2)) == 24);
  CHECK(verify_a4hat_trace_table(FiniteField::get(13, 1)) == 24);
  CHECK(verify_a4hat_trace_table(FiniteField::get(7, 2)) == 24);
  CHECK_THROWS(verify_a4hat_trace_table(FiniteField::get(7, 1)));
}

TEST_CASE("cyclotomic and cosine polynomials") {
  CHECK(cyclotomic_poly(1) == int_poly({-1, 1}));
  CHECK(cyclotomic_poly(6) == int_poly({1, -1, 1}));
  CHECK(cyclotomic_poly(12) == int_poly({1, 0, -1, 0, 1}));
  CHECK(cos_minpoly(3) == int_poly({1, 1}));
  CHECK(cos_minpoly(5) == int_poly({-1, 1, 1}));
  CHECK(cos_minpoly(7) == int_poly({-1, -2, 1, 1}));
  // oracle: value at 2cos(2 pi/h) in floating point
  for (int h = 3; h < 30; ++h) {
    const IntPoly psi = cos_minpoly(h);
    double x = 2 * std::cos(2 * M_PI / h), acc = 0;
    for (int i = psi.degree(); i >= 0; --i) acc = acc * x + psi[i].get_d();
    CHECK(std::abs(acc) < 1e-6);
    CHECK(psi.degree() * 2 == cyclotomic_poly(h).degree());
  }
}

TEST_CASE("dihedral representations") {
  const auto D = GaloisRep::dihedral_rep(229, 1);
  const auto& data = *D->dihedral;
  CHECK(data.cg->h() == 3);
  CHECK(data.field->k() == 1);
  // 2 is inert (229 = 5 mod 8)
  CHECK(poly_ints(frob_charpoly(D, 2)) == std::vector<long>{1, 0, 228});
  for (std::uint64_t l = 3; l < 300; l += 2) {
    if (l == 229 || !is_probable_prime(Integer(static_cast<unsigned long>(l)))) continue;
    const auto P = poly_ints(frob_charpoly(D, l));
    if (legendre(Integer(static_cast<unsigned long>(l)), Integer(229)) < 0) {
      CHECK(P == std::vector<long>{1, 0, 228});
    } else {
      // h = 3: trace 2 for principal prime classes, zeta_3 + zeta_3^-1 = -1 otherwise
      const int ord = prime_class_order(*data.cg, Integer(static_cast<unsigned long>(l)));
      CHECK(P == std::vector<long>{1, ord == 1 ? 227 : 1, 1});
    }
  }
  CHECK(inertia_exponents(D) == std::vector<std::vector<long>>{{114, 0}});
  const auto rho = GaloisRep::direct_sum({D, GaloisRep::omega_power(229, 1)});
  const auto det = det_decomposition(rho);
  CHECK(det.eps.is_trivial());
  CHECK(det.d == 115);
  const auto fi = frob_infinity(rho);
  REQUIRE(fi.size() == 2);
  CHECK(fi[0].scalar);
  CHECK(fi[0].sign == 1);
  CHECK(fi[0].dim == 2);
  CHECK(fi[1].sign == -1);
  CHECK(ramified_primes(rho).empty());
  CHECK(conductor_exponent(rho, 5) == 0);

  // h = 7 at p = 577: traces live in F_{577^3}
  const auto D7 = GaloisRep::dihedral_rep(577, 1);
  CHECK(D7->dihedral->cg->h() == 7);
  CHECK(D7->dihedral->field->k() == 3);
  const FFPoly psi = to_ff_poly(cos_minpoly(7), D7->dihedral->field);
  for (std::uint64_t l = 3; l < 200; l += 2) {
    if (!is_probable_prime(Integer(static_cast<unsigned long>(l)))) continue;
    if (legendre(Integer(static_cast<unsigned long>(l)), Integer(577)) < 0) continue;
    const FFPoly P = frob_charpoly(D7, l);
    const FFElem t = -P[1];
    const int ord = prime_class_order(*D7->dihedral->cg, Integer(static_cast<unsigned long>(l)));
    if (ord == 1) CHECK(t == D7->dihedral->field->from_int(std::int64_t{2}));
    else CHECK(psi(t).is_zero());
    // m and h - m give the same representation
    for (int m = 1; m <= 3; ++m)
      CHECK(frob_charpoly(GaloisRep::dihedral_rep(577, m), l) == frob_charpoly(GaloisRep::dihedral_rep(577, 7 - m), l));
  }
  CHECK_THROWS_AS(GaloisRep::dihedral_rep(5, 1), DomainError);
}

TEST_CASE("symmetric square against explicit matrices") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{{7, 2}, {277, 1}, {5, 3}}) {
    const auto F = FiniteField::get(p, k);
    for (int it = 0; it < 20; ++it) {
      auto rnd = [&] { return F->element_at(Integer(static_cast<unsigned long>(rng() % to_u64(F->order())))); };
      const FFElem a = rnd(), b = rnd(), c = rnd(), d = rnd();
      Matrix<FFElem> g(2, 2, F->zero());
      g(0, 0) = a;
      g(0, 1) = b;
      g(1, 0) = c;
      g(1, 1) = d;
      const FFElem two = F->from_int(std::int64_t{2});
      Matrix<FFElem> s(3, 3, F->zero());
      // columns: images of e1^2, e1 e2, e2^2
      s(0, 0) = a * a, s(1, 0) = two * a * c, s(2, 0) = c * c;
      s(0, 1) = a * b, s(1, 1) = a * d + b * c, s(2, 1) = c * d;
      s(0, 2) = b * b, s(1, 2) = two * b * d, s(2, 2) = d * d;
      auto rev = [](const FFPoly& cp) {
        std::vector<FFElem> v(cp.coeffs().rbegin(), cp.coeffs().rend());
        return FFPoly(cp.zero(), v);
      };
      CHECK(sym_square_charpoly(rev(charpoly(g))) == rev(charpoly(s)));
    }
  }
  // Sym^2 of a trace 0, det 1 block
  const auto F = FiniteField::get(11, 1);
  const FFPoly blk(F->zero(), {F->one(), F->zero(), F->one()});
  CHECK(sym_square_charpoly(blk) == FFPoly(F->zero(), {F->one(), F->one(), F->from_int(std::int64_t{-1}), F->from_int(std::int64_t{-1})}));
}

TEST_CASE("random trees: sums, twists, duals") {
  const A4Atom a = atom277();
  const Integer disc = poly_discriminant(a.f);
  const auto A = GaloisRep::a4hat(a);
  const auto F = FiniteField::get(277, 1);
  const auto chi = DirichletChar::quadratic(F, 5);
  std::mt19937_64 rng(3);
  std::function<RepPtr(int)> gen = [&](int depth) -> RepPtr {
    const int c = static_cast<int>(rng() % (depth > 2 ? 3 : 7));
    switch (c) {
      case 0: return GaloisRep::omega_power(277, static_cast<long>(rng() % 276));
      case 1: return A;
      case 2: return GaloisRep::character(277, static_cast<long>(rng() % 276), chi);
      case 3: return GaloisRep::twist(gen(depth + 1), static_cast<long>(rng() % 276) - 138);
      case 4: return GaloisRep::direct_sum({gen(depth + 1), gen(depth + 1)});
      case 5: return GaloisRep::contragredient(gen(depth + 1));
      default: return GaloisRep::sym_square(GaloisRep::twist(A, static_cast<long>(rng() % 276)));
    }
  };
  const std::vector<std::uint64_t> ls{3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    const RepPtr x = gen(0), y = gen(0);
    const long j = static_cast<long>(rng() % 276);
    for (std::uint64_t l : ls) {
      if (!usable(l, disc) || l == 5) continue;
      const FFPoly px = frob_charpoly(x, l), py = frob_charpoly(y, l);
      CHECK(frob_charpoly(GaloisRep::direct_sum({x, y}), l) == px * py);
      CHECK(px.degree() == x->dim());
      // twist: X -> l^j X
      const FFElem u = F->from_int(Integer(static_cast<unsigned long>(l))).pow(Integer(j));
      const FFPoly tw = frob_charpoly(GaloisRep::twist(x, j), l);
      FFElem up = F->one();
      for (int i = 0; i <= px.degree(); ++i, up = up * u) CHECK(tw[i] == px[i] * up);
      // dual: roots are reciprocal, i.e. P*(X) * P(1/X) X^n / c_n
      const FFPoly dual = frob_charpoly(GaloisRep::contragredient(x), l);
      CHECK(dual.degree() == px.degree());
      const FFElem cn = px[px.degree()];
      for (int i = 0; i <= px.degree(); ++i) CHECK(dual[i] * cn == px[px.degree() - i]);
      // blocks reproduce the same polynomial
      FFPoly prod(F->zero(), {F->one()});
      for (const auto& b : blocks(x)) prod = prod * frob_charpoly(b, l);
      CHECK(prod == px);
      ++checked;
    }
    // dual negates exponents and inverts the determinant
    const auto ex = inertia_exponents(x), exd = inertia_exponents(GaloisRep::contragredient(x));
    REQUIRE(ex.size() == exd.size());
    for (std::size_t b = 0; b < ex.size(); ++b)
      for (std::size_t i = 0; i < ex[b].size(); ++i) CHECK((ex[b][i] + exd[b][i]) % 276 == 0);
    const auto dx = det_decomposition(x), dd = det_decomposition(GaloisRep::contragredient(x));
    CHECK((dx.d + dd.d) % 276 == 0);
    CHECK((dx.eps * dd.eps).is_trivial());
    // det matches the constant-free top coefficient: (-1)^n c_n = eps(l) l^d
    for (std::uint64_t l : {7ul, 11ul, 13ul}) {
      if (!usable(l, disc)) continue;
      const FFPoly px = frob_charpoly(x, l);
      const int n = px.degree();
      const FFElem top = n % 2 ? -px[n] : px[n];
      const FFElem want = embed(dx.eps(static_cast<std::int64_t>(l)), F) *
                          F->from_int(Integer(static_cast<unsigned long>(l))).pow(Integer(dx.d));
      CHECK(top == want);
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("Frobenius at infinity and local data") {
  const A4Atom a = atom277();
  A4Atom c = a;
  c.realquad = -1;
  const auto Ac = GaloisRep::a4hat(c);
  CHECK(frob_infinity(Ac)[0].sign == -1);
  CHECK(frob_infinity(GaloisRep::twist(Ac, 1))[0].sign == 1);
  CHECK(frob_infinity(GaloisRep::omega_power(277, 0))[0].sign == 1);
  CHECK(frob_infinity(GaloisRep::sym_square(Ac))[0].sign == 1);
  const auto F = FiniteField::get(277, 1);
  const auto q3 = DirichletChar::quadratic(F, 3);
  CHECK(frob_infinity(GaloisRep::character(277, 0, q3))[0].sign == -1);
  CHECK(frob_infinity(GaloisRep::character(277, 1, q3))[0].sign == 1);
  // conductor of a character of conductor q
  const auto x5 = GaloisRep::character(277, 3, DirichletChar::quadratic(F, 5));
  CHECK(conductor_exponent(x5, 5) == 1);
  const auto rd = ramification_data(x5, 5);
  REQUIRE(rd.size() == 1);
  REQUIRE(rd[0].steps.size() == 1);
  CHECK(rd[0].steps[0].order == 2);
  CHECK(rd[0].steps[0].fixed_dim == 0);
  CHECK(ramified_primes(x5) == std::vector<std::uint64_t>{5});
  CHECK(det_decomposition(x5).eps.conductor() == 5);
  // the p = 3 atom with tame inertia of order 3 at 277
  const auto s3 = GaloisRep::opaque(3, "A4 at 277 mod 3", {0, 0}, 1, {{277, {{3, 1}}}});
  CHECK(conductor_exponent(s3, 277) == 1);
  CHECK(conductor_exponent(s3, 5) == 0);
  CHECK(ramified_primes(s3) == std::vector<std::uint64_t>{277});
  CHECK_THROWS_AS(frob_charpoly(s3, 5), DataGapError);
  CHECK_FALSE(frob_available(s3, 5));
  // wild character at 2 has no tame data but a conductor exponent
  const auto F5 = FiniteField::get(5, 1);
  const auto g8 = unit_generators(8);
  const auto w = DirichletChar::from_generators(F5, 8, {F5->one(), F5->from_int(std::int64_t{-1})});
  const auto xw = GaloisRep::character(5, 0, w);
  CHECK(conductor_exponent(xw, 2) == 3);
  CHECK_THROWS_AS(ramification_data(xw, 2), UnsupportedError);
}
