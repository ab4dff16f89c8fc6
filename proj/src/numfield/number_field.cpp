#include "galhecke/numfield/number_field.hpp"

#include <sstream>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/polyfactor.hpp"
#include "galhecke/exactalg/real_roots.hpp"

namespace galhecke {

namespace {

bool has_rational_root(const IntPoly& f) {
  // f monic: rational roots are integers dividing f(0).
  if (is_zero(f[0])) return true;
  for (const auto& d : divisors(abs(f[0]))) {
    if (is_zero(f(d)) || is_zero(f(Integer(-d)))) return true;
  }
  return false;
}

bool has_quadratic_factor(const IntPoly& f) {
  // (x^2 + p x + q)(x^2 + r x + s), q s = e
  const Integer &e = f[0], &d = f[1], &c = f[2], &b = f[3];
  if (is_zero(e)) return true;
  for (const auto& dv : divisors(abs(e))) {
    for (int sign : {1, -1}) {
      const Integer q = dv * sign;
      const Integer s = e / q;
      if (q != s) {
        const Integer num = d - q * b, den = s - q;
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
        const Integer p = num / den, r = b - p;
        if (q + s + p * r == c && p * s + q * r == d) return true;
      } else {
        if (d != q * b) continue;
        // p + r = b, p r = c - 2q
        const Integer disc = b * b - 4 * (c - 2 * q);
        if (is_perfect_square(disc) && mpz_even_p(Integer(b + isqrt(disc)).get_mpz_t())) return true;
      }
    }
  }
  return false;
}

}  // namespace

NumberField::NumberField(IntPoly f, std::string var) : f_(std::move(f)), fq_(to_qpoly(f_)), var_(std::move(var)) {}

NumberField::Ptr NumberField::create(const IntPoly& f, bool assume_irreducible, std::string var) {
  if (f.degree() < 1) throw ValidationError("defining polynomial must have degree >= 1");
  if (f.lead() != 1) throw ValidationError("defining polynomial must be monic");
  if (f.degree() >= 2 && f.degree() <= 4) {
    if (!quartic_is_irreducible(f)) throw ValidationError("defining polynomial is reducible: " + format_poly(f));
  } else if (f.degree() > 4 && !assume_irreducible) {
    throw UnsupportedError("irreducibility of degree > 4 polynomials must be asserted by the caller");
  }
  return std::make_shared<NumberField>(f, std::move(var));
}

NFElem NumberField::zero() const {
  return NFElem(shared_from_this(), std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0)));
}
NFElem NumberField::one() const { return from_rational(1); }
NFElem NumberField::gen() const {
  if (degree() == 1) return from_rational(Rational(-f_[0]));
  auto c = std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0));
  c[1] = 1;
  return NFElem(shared_from_this(), c);
}
NFElem NumberField::from_rational(const Rational& r) const {
  auto c = std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0));
  c[0] = r;
  return NFElem(shared_from_this(), c);
}
NFElem NumberField::from_coords(std::vector<Rational> coords) const {
  if (coords.size() != static_cast<std::size_t>(degree())) throw ValidationError("wrong number of coordinates");
  return NFElem(shared_from_this(), std::move(coords));
}
NFElem NumberField::from_poly(const QPoly& p) const {
  const QPoly r = p % fq_;
  auto c = std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0));
  for (int i = 0; i <= r.degree(); ++i) c[static_cast<std::size_t>(i)] = r[i];
  return NFElem(shared_from_this(), c);
}

bool NumberField::totally_real() const { return real_root_count(f_) == degree(); }

NFElem::NFElem(NumberField::Ptr field, std::vector<Rational> coords) : field_(std::move(field)), c_(std::move(coords)) {}

void NFElem::check_same(const NFElem& o) const {
  if (!field_ || !o.field_) throw DomainError("uninitialized number field element");
  if (field_ != o.field_ && field_->poly() != o.field_->poly()) throw DomainError("number field mismatch");
}

QPoly NFElem::as_poly() const { return QPoly(Rational(0), c_); }

NFElem NFElem::operator+(const NFElem& o) const {
  check_same(o);
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
  return NFElem(field_, std::move(r));
}
NFElem NFElem::operator-(const NFElem& o) const {
  check_same(o);
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
  return NFElem(field_, std::move(r));
}
NFElem NFElem::operator-() const {
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return NFElem(field_, std::move(r));
}
NFElem NFElem::operator*(const Rational& s) const {
  std::vector<Rational> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
  return NFElem(field_, std::move(r));
}
NFElem NFElem::operator*(const NFElem& o) const {
  check_same(o);
  return field_->from_poly(as_poly() * o.as_poly());
}

bool NFElem::operator==(const NFElem& o) const {
  check_same(o);
  return c_ == o.c_;
}

bool NFElem::is_zero() const {
  for (const auto& v : c_)
    if (sgn(v) != 0) return false;
  return true;
}

NFElem NFElem::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in number field");
  const auto bz = xgcd(as_poly(), field_->qpoly());
  if (bz.g.degree() != 0) throw DomainError("element not invertible (defining polynomial reducible?)");
  return field_->from_poly(bz.s);
}

NFElem NFElem::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  NFElem r = field_->one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Matrix<Rational> NFElem::mult_matrix() const {
  const std::size_t n = c_.size();
  Matrix<Rational> m(n, n, Rational(0));
  NFElem col = *this;
  const NFElem a = field_->gen();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col.c_[i];
    col = col * a;
  }
  return m;
}

std::string NFElem::to_string() const {
  if (!field_) return "<null>";
  return format_poly(as_poly(), field_->var(), [](const Rational& r) { return r.get_str(); });
}

bool lex_less(const NFElem& a, const NFElem& b) { return a.coords() < b.coords(); }

std::ostream& operator<<(std::ostream& os, const NFElem& x) { return os << x.to_string(); }

QPoly nf_charpoly(const NFElem& x) { return charpoly(x.mult_matrix()); }

Rational nf_norm(const NFElem& x) { return determinant(x.mult_matrix()); }

Rational nf_trace(const NFElem& x) {
  const auto m = x.mult_matrix();
  Rational t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

bool is_integral(const NFElem& x) {
  const QPoly cp = nf_charpoly(x);
  for (const auto& c : cp.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

Rational charpoly_content(const NFElem& x) { return rational_content(nf_charpoly(x)); }

QPoly nf_minpoly(const NFElem& x) {
  const QPoly cp = nf_charpoly(x);
  return (cp / gcd(cp, cp.derivative())).monic();
}

ContentRemoved content_removed(const NFElem& x) {
  if (x.is_zero()) throw DomainError("content_removed of zero");
  Integer g = 0;
  for (const auto& c : x.coords()) {
    if (c.get_den() != 1) throw DomainError("content_removed needs integral coordinates");
    g = gcd(g, Integer(c.get_num()));
  }
  NFElem s = x * Rational(1, g);
  Integer n = g;
  for (;;) {
    const NFElem half = s * Rational(1, 2);
    if (!is_integral(half)) break;
    s = half;
    n *= 2;
  }
  return {s, n};
}

FFElem residue_image(const NFElem& x, std::uint64_t l, const Poly<Zp>& factor) {
  if (factor.degree() < 1) throw DomainError("residue_image needs a nonconstant factor");
  const auto fl = to_zp_poly(x.field()->poly(), l);
  if (!(fl % factor).is_zero()) throw DomainError("factor does not divide the defining polynomial mod l");
  const auto field = FiniteField::get(l, factor.degree());
  const FFPoly ff = map_coeffs(factor, field->zero(), [&](const Zp& c) { return field->from_int(Integer(static_cast<unsigned long>(c.value()))); });
  const auto roots = roots_in_field(ff);
  if (roots.empty()) throw DomainError("factor has no root in its residue field");
  const FFElem& root = roots.front();
  const Integer L(static_cast<unsigned long>(l));
  FFElem acc = field->zero();
  const auto& c = x.coords();
  for (std::size_t i = c.size(); i-- > 0;) {
    const Integer den(c[i].get_den());
    if (mpz_divisible_p(den.get_mpz_t(), L.get_mpz_t())) throw DomainError("denominator divisible by " + std::to_string(l));
    const FFElem v = field->from_int(Integer(c[i].get_num())) * field->from_int(den).inv();
    acc = acc * root + v;
  }
  return acc;
}

bool coefficients_alternate(const QPoly& m) {
  const int d = m.degree();
  for (int i = 0; i <= d; ++i) {
    const int want = ((d - i) % 2 == 0) ? 1 : -1;
    if (sgn(m[i]) != want * sgn(m.lead())) return false;
  }
  return true;
}

bool totally_positive(const NFElem& x) {
  if (!x.field()->totally_real()) throw DomainError("totally_positive needs a totally real field");
  return coefficients_alternate(nf_minpoly(x));
}

bool quartic_is_irreducible(const IntPoly& f) {
  if (f.lead() != 1) throw DomainError("irreducibility test needs a monic polynomial");
  const int n = f.degree();
  if (n < 1 || n > 4) throw UnsupportedError("irreducibility certificate only for degree <= 4");
  if (n == 1) return true;
  if (has_rational_root(f)) return false;
  if (n == 4 && has_quadratic_factor(f)) return false;
  return true;
}

IntPoly resolvent_cubic(const IntPoly& f) {
  if (f.degree() != 4 || f.lead() != 1) throw DomainError("resolvent cubic needs a monic quartic");
  const Integer &e = f[0], &d = f[1], &c = f[2], &b = f[3];
  return IntPoly(Integer(0), {Integer(-(b * b * e - 4 * c * e + d * d)), Integer(b * d - 4 * e), Integer(-c), Integer(1)});
}

bool galois_group_is_A4(const IntPoly& f) {
  if (f.degree() != 4 || f.lead() != 1) throw DomainError("galois_group_is_A4 needs a monic quartic");
  if (!quartic_is_irreducible(f)) throw DomainError("quartic is reducible");
  if (!is_perfect_square(poly_discriminant(f))) return false;
  return !has_rational_root(resolvent_cubic(f));
}

}  // namespace galhecke
