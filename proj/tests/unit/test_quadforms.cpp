#include <random>

#include "doctest.h"
#include "galhecke/errors.hpp"
#include "galhecke/quadforms/quadforms.hpp"

using namespace galhecke;

namespace {

// Independent oracle: a prime ideal above l is principal iff x^2 - D y^2 = +-4l
// has a solution; the fundamental units here are small so a short search suffices.
bool norm_form_represents(long D, long l) {
  for (long y = 0; y <= 2000; ++y) {
    for (long sgn : {1L, -1L}) {
      const long t = D * y * y + sgn * 4 * l;
      if (t < 0) continue;
      const long x = static_cast<long>(isqrt(Integer(t)).get_si());
      if (x * x == t) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("reduction cycles") {
  const auto c5 = reduce_cycle({1, 1, -1});
  // proper equivalence: the rho-cycle alternates the sign of A
  CHECK(c5 == std::vector<QuadForm>{{-1, 1, 1}, {1, 1, -1}});
  CHECK(class_group(5).h() == 1);
  const QuadForm f{3, 13, -5};
  CHECK(f.disc() == 229);
  const auto c = reduce_cycle(f);
  for (const auto& g : c) {
    CHECK(is_reduced(g));
    CHECK(g.disc() == 229);
  }
  // (A,B,C) ~ (C,-B,A)
  CHECK(reduce_cycle(QuadForm{f.C, -f.B, f.A}) == c);
}

TEST_CASE("class numbers of the dihedral table") {
  const std::vector<std::pair<long, int>> table{{229, 3}, {257, 3}, {401, 5}, {577, 7}, {733, 3}, {761, 3}};
  for (const auto& [p, h] : table) {
    const auto cg = class_group(p);
    CHECK(cg.h() == h);
    CHECK(cg.h() % 2 == 1);
    CHECK(cg.is_cyclic());
    CHECK(cg.class_of(cg.principal()) == 0);
    CHECK(cg.principal().A == 1);
  }
  CHECK(class_group(5).h() == 1);
  CHECK_THROWS_AS(class_group(7), DomainError);
  CHECK_THROWS_AS(class_group(-3), DomainError);
}

TEST_CASE("prime class orders") {
  const auto cg = class_group(229);
  const int o3 = prime_class_order(cg, 3);
  CHECK(o3 == (norm_form_represents(229, 3) ? 1 : 3));
  CHECK_THROWS_AS(prime_class_order(cg, 2), DomainError);  // 229 = 5 mod 8: 2 inert
  const auto c5 = class_group(5);
  for (long l : {11, 19, 29, 31, 41}) CHECK(prime_class_order(c5, l) == 1);
  const auto c401 = class_group(401);
  int tested = 0;
  for (long l = 3; tested < 20; l += 2) {
    if (!is_probable_prime(l) || legendre(401, l) != 1) continue;
    const int o = prime_class_order(c401, l);
    CHECK(c401.h() % o == 0);
    CHECK((o == 1) == norm_form_represents(401, l));
    ++tested;
  }
}

TEST_CASE("composition and dlog") {
  std::mt19937_64 rng(3);
  for (long D : {229L, 257L, 401L}) {
    const auto cg = class_group(D);
    const auto g = cg.generator();
    CHECK(cg.order(g) == cg.h());
    CHECK(dlog_in_cyclic(cg, cg.principal(), g) == 0);
    CHECK(dlog_in_cyclic(cg, g, g) == 1);
    CHECK(dlog_in_cyclic(cg, compose(g, g), g) == 2 % cg.h());
    std::vector<QuadForm> all;
    for (const auto& c : cg.cycles()) all.insert(all.end(), c.begin(), c.end());
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int it = 0; it < 30; ++it) {
      const QuadForm x = all[pick(rng)], y = all[pick(rng)];
      // another member of the same cycles
      const auto& cx = cg.cycles()[static_cast<std::size_t>(cg.class_of(x))];
      const auto& cy = cg.cycles()[static_cast<std::size_t>(cg.class_of(y))];
      const QuadForm x2 = cx[static_cast<std::size_t>(it) % cx.size()], y2 = cy[static_cast<std::size_t>(it * 7) % cy.size()];
      CHECK(cg.class_of(compose(x, y)) == cg.class_of(compose(x2, y2)));
      CHECK(compose(x, y).disc() == D);
      const int ex = dlog_in_cyclic(cg, x, g), ey = dlog_in_cyclic(cg, y, g);
      CHECK(dlog_in_cyclic(cg, compose(x, y), g) == (ex + ey) % cg.h());
    }
  }
}
