#pragma once

#include <memory>
#include <string>
#include <vector>

#include "galhecke/exactalg/finite_field.hpp"
#include "galhecke/exactalg/matrix.hpp"
#include "galhecke/exactalg/poly.hpp"
#include "galhecke/exactalg/zp.hpp"

namespace galhecke {

class NFElem;

// F = Q[a]/(f) for a monic irreducible integral f.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  using Ptr = std::shared_ptr<const NumberField>;

  // Irreducibility is certified for degree <= 4; higher degrees need
  // assume_irreducible.
  static Ptr create(const IntPoly& f, bool assume_irreducible = false, std::string var = "a");

  const IntPoly& poly() const noexcept { return f_; }
  const QPoly& qpoly() const noexcept { return fq_; }
  int degree() const noexcept { return f_.degree(); }
  const std::string& var() const noexcept { return var_; }

  NFElem zero() const;
  NFElem one() const;
  NFElem gen() const;
  NFElem from_rational(const Rational& r) const;
  NFElem from_coords(std::vector<Rational> coords) const;
  NFElem from_poly(const QPoly& p) const;

  bool totally_real() const;

  NumberField(IntPoly f, std::string var);

 private:
  IntPoly f_;
  QPoly fq_;
  std::string var_;
};

class NFElem {
 public:
  NFElem() = default;
  NFElem(NumberField::Ptr field, std::vector<Rational> coords);

  const NumberField::Ptr& field() const noexcept { return field_; }
  const std::vector<Rational>& coords() const noexcept { return c_; }
  QPoly as_poly() const;

  NFElem operator+(const NFElem& o) const;
  NFElem operator-(const NFElem& o) const;
  NFElem operator*(const NFElem& o) const;
  NFElem operator/(const NFElem& o) const { return *this * o.inv(); }
  NFElem operator-() const;
  NFElem operator*(const Rational& r) const;
  NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
  NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
  NFElem& operator*=(const NFElem& o) { return *this = *this * o; }

  bool operator==(const NFElem& o) const;
  bool operator!=(const NFElem& o) const { return !(*this == o); }

  bool is_zero() const;
  NFElem inv() const;
  NFElem pow(long e) const;

  // Matrix of multiplication by this element; column j holds x * a^j.
  Matrix<Rational> mult_matrix() const;

  std::string to_string() const;

 private:
  void check_same(const NFElem& o) const;
  NumberField::Ptr field_;
  std::vector<Rational> c_;
};

inline NFElem zero_like(const NFElem& x) { return x.field()->zero(); }
inline NFElem one_like(const NFElem& x) { return x.field()->one(); }
inline bool is_zero(const NFElem& x) { return x.is_zero(); }
inline NFElem inverse(const NFElem& x) { return x.inv(); }
bool lex_less(const NFElem& a, const NFElem& b);
std::ostream& operator<<(std::ostream& os, const NFElem& x);

QPoly nf_charpoly(const NFElem& x);
Rational nf_norm(const NFElem& x);
Rational nf_trace(const NFElem& x);
// Charpoly has integer coefficients.
bool is_integral(const NFElem& x);
// Content of the characteristic polynomial (numerator gcd over denominator lcm).
Rational charpoly_content(const NFElem& x);
// Squarefree part of the charpoly, monic.
QPoly nf_minpoly(const NFElem& x);

struct ContentRemoved {
  NFElem s;
  Integer n;  // x = n * s
};
ContentRemoved content_removed(const NFElem& x);

// Image of x in F_{l^d} = canonical field of degree deg(factor), sending a to
// the least root of `factor` there.
FFElem residue_image(const NFElem& x, std::uint64_t l, const Poly<Zp>& factor);

bool totally_positive(const NFElem& x);

// Strict sign alternation of a monic polynomial with only real roots means
// all roots are positive.
bool coefficients_alternate(const QPoly& monic);

// True iff x has no rational root and (degree 4) no integer quadratic factor.
bool quartic_is_irreducible(const IntPoly& f);
IntPoly resolvent_cubic(const IntPoly& f);
bool galois_group_is_A4(const IntPoly& f);

}  // namespace galhecke
