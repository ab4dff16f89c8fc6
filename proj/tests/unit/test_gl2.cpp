#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "galhecke/errors.hpp"
#include "galhecke/gl2/gl2.hpp"

using namespace galhecke;

namespace {

// Naive bivariate expansion of P(dX - bY, -cX + aY), integer arithmetic then mod p.
std::vector<std::uint64_t> act_oracle(long long a, long long b, long long c, long long d, const std::vector<std::uint64_t>& P,
                                      std::uint64_t p) {
  const int g = static_cast<int>(P.size()) - 1;
  auto mul = [](const std::vector<Integer>& u, const std::vector<Integer>& v) {
    std::vector<Integer> w(u.size() + v.size() - 1, Integer(0));
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i + j] += u[i] * v[j];
    return w;
  };
  // polynomials in X with implicit Y: index = power of X
  const std::vector<Integer> L1{Integer(static_cast<long>(-b)), Integer(static_cast<long>(d))};
  const std::vector<Integer> L2{Integer(static_cast<long>(a)), Integer(static_cast<long>(-c))};
  std::vector<Integer> acc(static_cast<std::size_t>(g + 1), Integer(0));
  for (int i = 0; i <= g; ++i) {
    std::vector<Integer> t{Integer(static_cast<unsigned long>(P[static_cast<std::size_t>(i)]))};
    for (int k = 0; k < i; ++k) t = mul(t, L1);
    for (int k = 0; k < g - i; ++k) t = mul(t, L2);
    for (std::size_t j = 0; j < t.size(); ++j) acc[j] += t[j];
  }
  std::vector<std::uint64_t> out;
  for (auto& v : acc) out.push_back(to_u64(mod_floor(v, Integer(static_cast<unsigned long>(p)))));
  return out;
}

// Level-one Manin relations solved densely.
std::size_t level_one_dim_oracle(std::uint64_t p, int g) {
  const auto F = FiniteField::get(p, 1);
  std::vector<std::vector<FFElem>> rows;
  auto to_ff = [&](const std::vector<std::uint64_t>& v) {
    std::vector<FFElem> r;
    for (auto x : v) r.push_back(F->from_int(static_cast<std::int64_t>(x)));
    return r;
  };
  for (int i = 0; i <= g; ++i) {
    std::vector<std::uint64_t> P(static_cast<std::size_t>(g + 1), 0);
    P[static_cast<std::size_t>(i)] = 1;
    const auto s = act_oracle(0, 1, -1, 0, P, p);
    const auto t1 = act_oracle(-1, 1, -1, 0, P, p);
    const auto t2 = act_oracle(0, -1, 1, -1, P, p);
    std::vector<std::uint64_t> r1(P.size()), r2(P.size()), rj(P.size());
    for (std::size_t k = 0; k < P.size(); ++k) {
      r1[k] = (P[k] + s[k]) % p;
      r2[k] = (P[k] + t1[k] + t2[k]) % p;
      rj[k] = g % 2 ? 2 * P[k] % p : 0;
    }
    rows.push_back(to_ff(r1));
    rows.push_back(to_ff(r2));
    rows.push_back(to_ff(rj));
  }
  return static_cast<std::size_t>(g + 1) - rank(Matrix<FFElem>::from_rows(rows, F->zero()));
}

// Classical dimension of S_k(SL2(Z)).
int cusp_dim_level_one(int k) {
  if (k % 2 || k < 12) return 0;
  return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

// tau(n) from q prod (1 - q^n)^24, truncated at q^50.
std::vector<Integer> tau_oracle() {
  const std::size_t M = 51;
  std::vector<Integer> f(M, Integer(0));
  f[1] = 1;
  for (std::size_t n = 1; n < M; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = M - 1; i >= n; --i) f[i] -= f[i - n];
  return f;
}

std::map<std::uint64_t, FFElem> targets_for(const FiniteField::Ptr& F, std::uint64_t bound, std::uint64_t avoid,
                                            const std::function<Integer(std::uint64_t)>& fn) {
  std::map<std::uint64_t, FFElem> t;
  for (std::uint64_t l = 2; l <= bound; ++l)
    if (is_probable_prime(Integer(static_cast<unsigned long>(l))) && avoid % l) t[l] = F->from_int(fn(l));
  return t;
}

bool commute(const Matrix<FFElem>& A, const Matrix<FFElem>& B) { return A * B == B * A; }

}  // namespace

TEST_CASE("coefficient action") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint64_t p = 101;
    const int g = static_cast<int>(rng() % 8);
    std::vector<std::uint64_t> P(static_cast<std::size_t>(g + 1));
    for (auto& x : P) x = rng() % p;
    const Mat2 A{static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 7) - 3,
                 static_cast<long long>(rng() % 7) - 3};
    const Mat2 B{static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 7) - 3, static_cast<long long>(rng() % 7) - 3,
                 static_cast<long long>(rng() % 7) - 3};
    CHECK(sym_act(A, P, p) == act_oracle(A.a, A.b, A.c, A.d, P, p));
    // left action
    CHECK(sym_act(A * B, P, p) == sym_act(A, sym_act(B, P, p), p));
  }
}

TEST_CASE("Manin relations and dimensions") {
  for (int g = 0; g <= 20; ++g) {
    const auto S = build_space(101, 1, g);
    CHECK(S.dim() == level_one_dim_oracle(101, g));
    const int k = g + 2;
    const std::size_t expect = g % 2 ? 0 : (k == 2 ? 0 : static_cast<std::size_t>(2 * cusp_dim_level_one(k) + 1));
    CHECK(S.dim() == expect);
  }
  // weight 2: 2 * genus + cusps - 1
  CHECK(build_space(101, 11, 0).dim() == 3);
  CHECK(build_space(101, 23, 0).dim() == 5);
  CHECK(build_space(101, 37, 0).dim() == 5);
  CHECK(build_space(101, 13, 0).dim() == 1);
  CHECK(build_space(11, 1, 0).dim() == 0);
  CHECK_THROWS_AS(build_space(3, 1, 2), DomainError);
  CHECK_THROWS_AS(build_space(11, 22, 2), DomainError);
}

TEST_CASE("modular symbols respect Gamma0(N) with character") {
  const auto F49 = FiniteField::get(7, 2);
  const auto x4 = DirichletChar::from_generators(F49, 5, {ff_root_of_unity(F49, Integer(4))});
  const auto S = build_space(7, 5, 1, x4);
  const auto T = build_space(101, 11, 2);
  std::mt19937 rng(9);
  for (const ManinSpace* sp : {&S, &T}) {
    const long long N = static_cast<long long>(sp->level());
    const std::uint64_t p = sp->p();
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::uint64_t> P(static_cast<std::size_t>(sp->g() + 1));
      for (auto& x : P) x = rng() % p;
      const long long a1 = static_cast<long long>(rng() % 41) - 20, b1 = 1 + static_cast<long long>(rng() % 20);
      const long long a2 = static_cast<long long>(rng() % 41) - 20, b2 = 1 + static_cast<long long>(rng() % 20);
      const long long a3 = static_cast<long long>(rng() % 41) - 20, b3 = 1 + static_cast<long long>(rng() % 20);
      // additivity
      const auto u = sp->modular_symbol(P, a1, b1, a2, b2);
      const auto v = sp->modular_symbol(P, a2, b2, a3, b3);
      const auto w = sp->modular_symbol(P, a1, b1, a3, b3);
      for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] + v[i] == w[i]);
      // gamma x = eps(d) x for gamma in Gamma0(N)
      const long long c = N * (static_cast<long long>(rng() % 5) - 2);
      long long d = c == 0 ? 1 : 1 + static_cast<long long>(rng() % 30);
      while (std::gcd(c, d) != 1) ++d;
      long long aa = 0, bb = 0;
      for (aa = -50; aa <= 50; ++aa) {
        if (c == 0) {
          if (d == 1) {
            aa = 1;
            bb = static_cast<long long>(rng() % 5);
            break;
          }
          continue;
        }
        if ((aa * d - 1) % c == 0) {
          bb = (aa * d - 1) / c;
          break;
        }
      }
      if (c == 0 && d != 1) continue;
      const Mat2 gm{aa, bb, c, d};
      REQUIRE(gm.det() == 1);
      auto img = [&](long long n, long long dd) { return std::pair<long long, long long>{gm.a * n + gm.b * dd, gm.c * n + gm.d * dd}; };
      const auto [n1, d1] = img(a1, b1);
      const auto [n2, d2] = img(a2, b2);
      const auto lhs = sp->modular_symbol(sym_act(gm, P, p), n1, d1, n2, d2);
      const FFElem e = sp->eps()(static_cast<std::int64_t>(d));
      for (std::size_t i = 0; i < u.size(); ++i) CHECK(lhs[i] == e * u[i]);
    }
  }
  CHECK(S.dim() == 2);
}

TEST_CASE("Hecke operators") {
  const auto D = build_space(11, 1, 10);
  const auto T2 = hecke_operator(D, 2), T3 = hecke_operator(D, 3), T5 = hecke_operator(D, 5);
  CHECK(commute(T2, T3));
  CHECK(commute(T3, T5));
  const auto F49 = FiniteField::get(7, 2);
  const auto x4 = DirichletChar::from_generators(F49, 5, {ff_root_of_unity(F49, Integer(4))});
  const auto S = build_space(7, 5, 3, x4);
  CHECK(commute(hecke_operator(S, 2), hecke_operator(S, 3)));
  CHECK(commute(hecke_operator(S, 11), hecke_operator(S, 3)));
  CHECK_THROWS_AS(hecke_operator(S, 5), UnsupportedError);
  CHECK_THROWS_AS(hecke_operator(S, 7), UnsupportedError);
  CHECK_THROWS_AS(hecke_operator(S, 4), DomainError);

  // weight 2 Eisenstein line: 1 + l
  const auto E = build_space(101, 11, 0);
  const auto F = E.field();
  CHECK(joint_eigenspace_dim(E, targets_for(F, 19, 101 * 11, [](std::uint64_t l) { return Integer(static_cast<unsigned long>(1 + l)); })) == 1);

  // Eisenstein E4 mod 13: 1 + l^3
  const auto S13 = build_space(13, 1, 2);
  CHECK(joint_eigenspace_dim(S13, targets_for(S13.field(), 23, 13, [](std::uint64_t l) {
          return Integer(static_cast<unsigned long>(1 + l * l * l));
        })) == 1);

  // Delta mod 11 from the eta product
  const auto tau = tau_oracle();
  CHECK(tau[2] == -24);
  CHECK(tau[3] == 252);
  const auto td = targets_for(D.field(), 23, 11, [&](std::uint64_t l) { return tau[l]; });
  CHECK(td.at(2).as_prime_field() == 9);
  CHECK(joint_eigenspace_dim(D, td) == 2);
  CHECK(joint_eigenspace_dim(D, {{2, D.field()->from_int(std::int64_t{9})}}) == 2);
  const auto es = eigensystems(D, 23);
  REQUIRE(es.size() == 2);
  bool found = false;
  for (const auto& e : es) {
    if (e.a.at(2).as_prime_field() != 9) continue;
    found = true;
    CHECK(e.multiplicity == 2);
    for (const auto& [l, v] : td) CHECK(e.a.at(l) == v);
  }
  CHECK(found);
}

TEST_CASE("eigensystem extraction with extensions") {
  // weight 2, level 23: the cusp forms have coefficients in Q(sqrt 5)
  const auto S = build_space(7, 23, 0);
  const auto es = eigensystems(S, 13, 6, 2);
  std::size_t total = 0;
  bool ext = false;
  for (const auto& e : es) {
    total += e.multiplicity;
    CHECK(e.split);
    ext = ext || e.field->k() == 2;
    // each joint eigenspace really is one
    CHECK(joint_eigenspace_dim(S, e.a) >= e.multiplicity);
  }
  CHECK(ext);  // 5 is not a square mod 7
  CHECK(total <= S.dim());
  const auto fmt = format_gl2_eigensystems(es);
  CHECK(fmt.find("7 23 2 0") != std::string::npos);
  // output feeds the hecke datafile parser
  const auto first = to_eigensystem(es.front());
  CHECK(parse_eigendata(format_eigendata(first)).table.size() == first.table.size());
}

TEST_CASE("Eisenstein eigensystems in the predicted weight") {
  const auto F13 = FiniteField::get(13, 1), F7 = FiniteField::get(7, 1), F11 = FiniteField::get(11, 1);
  const auto F49 = FiniteField::get(7, 2);
  const auto x4 = DirichletChar::from_generators(F49, 5, {ff_root_of_unity(F49, Integer(4))});
  SUBCASE("trivial characters, a = 3, p = 13") {
    const auto r = verify_eisenstein(DirichletChar::trivial(F13), DirichletChar::trivial(F13), 3, 13);
    CHECK(r.ok());
    CHECK(r.level == 1);
    CHECK(r.g == 2);
    CHECK(r.minimal);
    for (const auto& row : r.rows) CHECK(row.expected.as_prime_field() == (1 + row.l * row.l * row.l) % 13);
  }
  CHECK(verify_eisenstein(DirichletChar::quadratic(F7, 5), DirichletChar::trivial(F7), 3, 7).ok());
  CHECK(verify_eisenstein(DirichletChar::quadratic(F11, 7), DirichletChar::trivial(F11), 2, 11).ok());
  CHECK(verify_eisenstein(DirichletChar::trivial(F11), DirichletChar::quadratic(F11, 5), 3, 11).ok());
  const auto r4 = verify_eisenstein(x4, DirichletChar::trivial(F49), 2, 7);
  CHECK(r4.ok());
  CHECK(r4.level == 5);
  // the nebentype convention matters: the inverse character has no such eigenvector
  {
    const auto S = build_space(7, 5, 1, x4.inv());
    std::map<std::uint64_t, FFElem> t;
    for (const auto& row : r4.rows) t[row.l] = row.expected;
    CHECK(joint_eigenspace_dim(S, t) == 0);
  }
  SUBCASE("exceptional 1 + omega") {
    const auto r = verify_eisenstein(DirichletChar::trivial(F7), DirichletChar::trivial(F7), 7, 7);
    CHECK(r.exceptional);
    CHECK(r.g == 6);
    CHECK(r.ok());
    CHECK(format_eisenstein(r).find("p + 1") != std::string::npos);
  }
  CHECK_THROWS_AS(verify_eisenstein(DirichletChar::quadratic(F7, 5), DirichletChar::trivial(F7), 2, 7), DomainError);
  CHECK_THROWS_AS(verify_eisenstein(DirichletChar::trivial(F7), DirichletChar::trivial(F7), 1, 7), DomainError);
  CHECK_THROWS_AS(verify_eisenstein(DirichletChar::trivial(F7), DirichletChar::quadratic(F7, 3), 2, 7), DomainError);
}
