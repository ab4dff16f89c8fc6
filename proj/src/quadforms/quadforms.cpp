#include "galhecke/quadforms/quadforms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

void check_disc(const Integer& D) {
  if (D <= 0 || is_perfect_square(D)) throw DomainError("discriminant must be positive and not a square");
  if (mod_floor(D, Integer(4)) > 1) throw DomainError("discriminant must be 0 or 1 mod 4");
}

// floor(sqrt D); D is never a square, so B < sqrt(D) <=> B <= s.
Integer floor_sqrt(const Integer& D) { return isqrt(D); }

}  // namespace

bool QuadForm::operator<(const QuadForm& o) const {
  if (A != o.A) return A < o.A;
  if (B != o.B) return B < o.B;
  return C < o.C;
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << '(' << A << ", " << B << ", " << C << ')';
  return os.str();
}

bool is_reduced(const QuadForm& f) {
  const Integer s = floor_sqrt(f.disc());
  const Integer a2 = 2 * abs(f.A);
  // 0 < B < sqrt D and sqrt D - B < 2|A| < sqrt D + B
  return f.B > 0 && f.B <= s && a2 + f.B > s && a2 - f.B <= s;
}

QuadForm rho(const QuadForm& f) {
  const Integer D = f.disc();
  if (is_zero(f.C)) throw DomainError("degenerate form " + f.to_string());
  const Integer s = floor_sqrt(D);
  const Integer c = abs(f.C), m = 2 * c;
  // B' = -B mod 2|C| in (-|C|, |C|] if |C| > sqrt D, else in (sqrt D - 2|C|, sqrt D)
  const Integer lo = c > s ? Integer(-c) : Integer(s - m);  // exclusive lower end
  Integer b = mod_floor(Integer(-f.B - lo), m);
  if (is_zero(b)) b = m;
  b += lo;
  return {f.C, b, Integer((b * b - D) / (4 * f.C))};
}

QuadForm reduce(const QuadForm& f0) {
  check_disc(f0.disc());
  QuadForm f = f0;
  if (is_zero(f.C)) f = {f.C, -f.B, f.A};
  for (int it = 0; !is_reduced(f); ++it) {
    if (it > 100000) throw DomainError("reduction did not terminate for " + f0.to_string());
    f = rho(f);
  }
  return f;
}

std::vector<QuadForm> reduce_cycle(const QuadForm& f) {
  const QuadForm start = reduce(f);
  std::vector<QuadForm> cyc{start};
  for (QuadForm g = rho(start); !(g == start); g = rho(g)) cyc.push_back(g);
  std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
  return cyc;
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const Integer D = f.disc();
  if (g.disc() != D) throw DomainError("composition of forms with different discriminants");
  const Integer beta = (f.B + g.B) / 2;
  const auto b1 = xgcd(f.A, g.A);
  const auto b2 = xgcd(b1.g, beta);
  const Integer d = b2.g;
  // u a1 + v a2 + w beta = d
  const Integer u = b2.u * b1.u, v = b2.u * b1.v, w = b2.v;
  const Integer A = f.A * g.A / (d * d);
  const Integer num = u * f.A * g.B + v * g.A * f.B + w * (f.B * g.B + D) / 2;
  if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) throw DomainError("composition failed");
  const Integer m = 2 * abs(A);
  Integer B = mod_floor(Integer(num / d), m);
  const Integer cn = B * B - D;
  if (!mpz_divisible_p(cn.get_mpz_t(), Integer(4 * A).get_mpz_t())) throw DomainError("composition failed");
  return reduce(QuadForm{A, B, Integer(cn / (4 * A))});
}

ClassGroup::ClassGroup(const Integer& D) : D_(D) {
  check_disc(D);
  const Integer s = floor_sqrt(D);
  std::set<QuadForm> all;
  for (Integer B = 1; B <= s; ++B) {
    const Integer n = D - B * B;
    if (!mpz_divisible_p(n.get_mpz_t(), Integer(4).get_mpz_t())) continue;
    const Integer ac = n / 4;  // A C = -ac
    for (const auto& a : divisors(ac))
      for (int sign : {1, -1}) {
        const QuadForm q{Integer(sign * a), B, Integer(-sign * (ac / a))};
        if (is_reduced(q)) all.insert(q);
      }
  }
  std::set<QuadForm> seen;
  const bool odd = mpz_odd_p(D.get_mpz_t());
  const Integer b0 = odd ? 1 : 0;
  const QuadForm p0 = reduce(QuadForm{Integer(1), b0, Integer((b0 * b0 - D) / 4)});
  auto add = [&](const QuadForm& q) {
    auto cyc = reduce_cycle(q);
    for (const auto& x : cyc) {
      seen.insert(x);
      index_[x] = static_cast<int>(cycles_.size());
    }
    cycles_.push_back(std::move(cyc));
  };
  add(p0);
  for (const auto& q : all)
    if (!seen.count(q)) add(q);
  if (seen.size() != all.size()) throw DomainError("cycle enumeration mismatch");
}

std::vector<QuadForm> ClassGroup::reps() const {
  std::vector<QuadForm> r;
  for (const auto& c : cycles_) r.push_back(c.front());
  return r;
}

QuadForm ClassGroup::principal() const {
  // the unique reduced form (1, B0, C0): B0 = D mod 2 and sqrt D - 2 < B0 < sqrt D
  const Integer s = floor_sqrt(D_);
  const Integer b = mpz_odd_p(D_.get_mpz_t()) == mpz_odd_p(s.get_mpz_t()) ? s : Integer(s - 1);
  return {Integer(1), b, Integer((b * b - D_) / 4)};
}

int ClassGroup::class_of(const QuadForm& f) const {
  if (f.disc() != D_) throw DomainError("form " + f.to_string() + " has the wrong discriminant");
  return index_.at(reduce(f));
}

QuadForm ClassGroup::power(const QuadForm& f, long e) const {
  if (e < 0) return power(QuadForm{f.A, Integer(-f.B), f.C}, -e);
  QuadForm r = principal(), b = reduce(f);
  while (e) {
    if (e & 1) r = compose(r, b);
    b = compose(b, b);
    e >>= 1;
  }
  return r;
}

int ClassGroup::order(const QuadForm& f) const {
  QuadForm x = reduce(f);
  for (int k = 1; k <= h(); ++k) {
    if (class_of(x) == 0) return k;
    x = compose(x, f);
  }
  throw DomainError("class order exceeds h");
}

bool ClassGroup::is_cyclic() const {
  for (const auto& c : cycles_)
    if (order(c.front()) == h()) return true;
  return false;
}

QuadForm ClassGroup::generator() const {
  if (h() == 1) return principal();
  std::vector<QuadForm> all;
  for (std::size_t i = 1; i < cycles_.size(); ++i) all.insert(all.end(), cycles_[i].begin(), cycles_[i].end());
  std::sort(all.begin(), all.end());
  for (const auto& q : all)
    if (order(q) == h()) return q;
  throw UnsupportedError("class group of discriminant " + D_.get_str() + " is not cyclic");
}

ClassGroup class_group(const Integer& D) {
  if (!is_probable_prime(D) || mod_floor(D, Integer(4)) != 1)
    throw DomainError("class_group expects a prime discriminant p = 1 mod 4");
  return ClassGroup(D);
}

QuadForm prime_form(const Integer& D, const Integer& l) {
  if (!is_probable_prime(l)) throw DomainError("prime_form needs a prime");
  if (mpz_divisible_p(D.get_mpz_t(), l.get_mpz_t())) throw DomainError("ramified prime " + l.get_str());
  const Integer m = 4 * l;
  for (Integer B = 0; B < 2 * l; ++B)
    if (mod_floor(Integer(B * B - D), m) == 0) return {l, B, Integer((B * B - D) / m)};
  throw DomainError("inert prime " + l.get_str());
}

int prime_class_order(const ClassGroup& cg, const Integer& l) { return cg.order(prime_form(cg.disc(), l)); }

int dlog_in_cyclic(const ClassGroup& cg, const QuadForm& form, const QuadForm& generator) {
  if (cg.order(generator) != cg.h()) throw UnsupportedError("not a generator of a cyclic class group");
  const int target = cg.class_of(form);
  QuadForm x = cg.principal();
  for (int e = 0; e < cg.h(); ++e) {
    if (cg.class_of(x) == target) return e;
    x = compose(x, generator);
  }
  throw DomainError("dlog not found");
}

}  // namespace galhecke
