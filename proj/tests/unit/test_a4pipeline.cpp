#include "doctest.h"
#include "galhecke/a4pipeline/a4pipeline.hpp"
#include "galhecke/errors.hpp"

using namespace galhecke;

namespace {

const char* kData277 =
    "p 277\n"
    "f 1 3 -16 -1 1\n"
    "g 9417 + 787*a - 51*a^2 - 133*a^3 + 1359*b - 627*a*b - 468*a^2*b + 114*a^3*b - 345*b^2 - 216*a*b^2 + "
    "57*a^2*b^2\n";

bool is_positive_rational(const NFElem& x) {
  const auto& c = x.coords();
  for (std::size_t i = 1; i < c.size(); ++i)
    if (sgn(c[i]) != 0) return false;
  return sgn(c[0]) > 0;
}

}  // namespace

TEST_CASE("quartic datafile parsing") {
  const auto ds = parse_a4_dataset(kData277);
  CHECK(ds.p == 277);
  CHECK(ds.f == int_poly({1, 3, -16, -1, 1}));
  REQUIRE(ds.gexpr);
  CHECK(ds.basis2.empty());
  const auto file = read_a4_dataset(GALHECKE_DATA_DIR "/a4_p277.txt");
  CHECK(file.f == ds.f);
  CHECK_THROWS_AS(parse_a4_dataset("p 277\n"), ValidationError);
  CHECK_THROWS_AS(parse_a4_dataset("p 276\nf 1 3 -16 -1 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_a4_dataset("p 277\nf 1 3 -16 -1 1\nh 3\n"), ValidationError);
  CHECK_THROWS_AS(parse_a4_dataset("p 277\nf 1 3 -16 1\n"), ValidationError);
}

TEST_CASE("validate_quartic") {
  const auto c = validate_quartic(parse_a4_dataset(kData277));
  CHECK(c.ok());
  CHECK(c.index_candidate == 4);
  CHECK(c.index_approximate);
  const auto bad = validate_quartic(parse_a4_dataset("p 5\nf -2 0 0 0 1\n"));
  CHECK_FALSE(bad.ok());
  CHECK(bad.failures().find("Galois group A4") != std::string::npos);
  // x^4 + 8x + 12: group A4, no real roots, disc = 3^2 * 192^2
  const auto cx = validate_quartic(parse_a4_dataset("p 3\nf 12 8 0 0 1\n"));
  CHECK_FALSE(cx.ok());
  CHECK(cx.failures().find("four real roots") != std::string::npos);
  CHECK(cx.failures().find("Galois group") == std::string::npos);
  CHECK(cx.index_candidate == 192);
}

TEST_CASE("compute_s and square classes") {
  const auto ds = parse_a4_dataset(kData277);
  const auto sc = compute_s(ds);
  const auto F = sc.s.field();
  CHECK(sc.s == F->from_coords({Rational(347661), Rational(2034265), Rational(193305), Rational(-150700)}));
  CHECK(sc.n == 17728);
  CHECK(sc.r == sc.s * Rational(sc.n));
  A4Dataset ds9 = ds;
  ds9.gexpr = "9*(" + *ds.gexpr + ")";
  CHECK(compute_s(ds9).s == sc.s);
  // multiplying g by h(a)^2 changes r by h^6: same square class, same verdict
  const NFElem a = F->gen();
  for (const char* h : {"a+2", "a^2-3", "2*a+5"}) {
    A4Dataset d2 = ds;
    d2.gexpr = "(" + std::string(h) + ")^2*(" + *ds.gexpr + ")";
    const auto s2 = compute_s(d2).s;
    const NFElem hv = rel_norm(std::string(h), F);  // h(a)^3
    CHECK(is_positive_rational(s2 / (sc.s * hv * hv)));
    CHECK(decide_real_or_complex(d2).verdict == 1);
  }
  // g = (1+a)^2 gives a square class containing a square
  A4Dataset dsq = ds;
  dsq.gexpr = "(1+a)^2";
  const auto ssq = compute_s(dsq).s;
  const NFElem cube = (a + F->one()).pow(3);
  CHECK(is_positive_rational(ssq / (cube * cube)));
  CHECK(is_integral(ssq));
  A4Dataset dz = ds;
  dz.gexpr = "0";
  CHECK_THROWS_AS(compute_s(dz), DomainError);
  A4Dataset dn = ds;
  dn.gexpr.reset();
  CHECK_THROWS_AS(decide_real_or_complex(dn), ValidationError);
}

TEST_CASE("p = 277 verdict") {
  const auto r = decide_real_or_complex(parse_a4_dataset(kData277));
  CHECK(r.p_coprime);
  CHECK(r.two_unramified);
  CHECK(r.t == r.s);
  CHECK(r.verdict == 1);
  CHECK(r.verdict_symbol() == "+");
  CHECK(r.norm_s == Rational(Integer("10483965209607696")));
  CHECK(r.trace_s == 3775974);
  CHECK_FALSE(r.dedekind_2);
  CHECK(r.index2 == 4);
  const std::string text = format_a4_report(r);
  CHECK(text.find("p 277 verdict +") != std::string::npos);
  const auto atom = a4_atom(parse_a4_dataset(kData277), r);
  CHECK(atom.realquad == 1);
  // supplied basis2 takes the same route
  auto ds = parse_a4_dataset(kData277);
  const auto ctx = TwoAdicContext::compute(r.s.field());
  for (const auto& b : ctx.basis2()) ds.basis2.push_back(b.coords());
  const auto r2 = decide_real_or_complex(ds);
  CHECK(r2.verdict == 1);
  CHECK(r2.index2 == 4);
}

TEST_CASE("sign decision on synthetic data") {
  // x^2 - x - 1: 2 inert; -3 = 1 mod 4 is totally negative
  const auto F = NumberField::create(int_poly({-1, -1, 1}));
  const auto ctx = TwoAdicContext::compute(F);
  const auto d = decide_sign(F->from_rational(-3), ctx);
  CHECK(d.two_unramified);
  CHECK(d.verdict == -1);
  const auto d2 = decide_sign(F->from_rational(3), ctx);
  CHECK_FALSE(d2.two_unramified);
  CHECK(d2.verdict == -1);
  const auto d3 = decide_sign(F->from_rational(5), ctx);
  CHECK(d3.two_unramified);
  CHECK(d3.verdict == 1);
  // mixed signs: a (roots of x^2-x-1 have both signs)
  const auto d4 = decide_sign(F->gen(), ctx);
  CHECK(d4.verdict == 0);
}
