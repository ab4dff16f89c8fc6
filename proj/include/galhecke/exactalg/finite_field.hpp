#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "galhecke/exactalg/integer.hpp"
#include "galhecke/exactalg/poly.hpp"
#include "galhecke/exactalg/zp.hpp"

namespace galhecke {

class FFElem;

// F_{p^k} = F_p[x]/(m) with m the lexicographically least monic irreducible
// of degree k (coefficient tuples compared c0 first). Instances are shared and
// immutable; obtain them through get().
class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  using Ptr = std::shared_ptr<const FiniteField>;

  static Ptr get(std::uint64_t p, int k);

  std::uint64_t p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  const Integer& order() const noexcept { return q_; }
  // Monic modulus, low degree first, length k+1.
  const std::vector<std::uint64_t>& modulus() const noexcept { return mod_; }
  Poly<Zp> modulus_poly() const;

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(const Integer& v) const;
  FFElem from_int(std::int64_t v) const;
  FFElem from_coeffs(std::vector<std::uint64_t> low_first) const;
  // The class of x in F_p[x]/(m).
  FFElem gen_x() const;
  // Element with position `index` in the canonical order (c0 most significant).
  FFElem element_at(const Integer& index) const;

  // Least element of full multiplicative order (computed once).
  FFElem generator() const;
  const std::vector<Integer>& order_minus_one_primes() const;

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_; }

  std::string name() const;

  FiniteField(std::uint64_t p, int k, std::vector<std::uint64_t> modulus);

 private:
  std::uint64_t p_;
  int k_;
  Integer q_;
  std::vector<std::uint64_t> mod_;
  mutable std::once_flag gen_once_;
  mutable std::vector<std::uint64_t> gen_;
  mutable std::once_flag primes_once_;
  mutable std::vector<Integer> primes_;
};

class FFElem {
 public:
  FFElem() = default;
  FFElem(FiniteField::Ptr field, std::vector<std::uint64_t> coeffs);

  const FiniteField::Ptr& field() const noexcept { return field_; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  std::uint64_t p() const { return field_->p(); }
  // Only for elements of the prime field.
  std::uint64_t as_prime_field() const;
  bool in_prime_field() const;

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator*(const FFElem& o) const;
  FFElem operator/(const FFElem& o) const { return *this * o.inv(); }
  FFElem operator-() const;
  FFElem& operator+=(const FFElem& o) { return *this = *this + o; }
  FFElem& operator-=(const FFElem& o) { return *this = *this - o; }
  FFElem& operator*=(const FFElem& o) { return *this = *this * o; }

  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  FFElem inv() const;
  FFElem pow(const Integer& e) const;
  FFElem frobenius() const { return pow(Integer(static_cast<unsigned long>(p()))); }
  Integer multiplicative_order() const;

  // Comma-separated digits, low first; a bare integer in the prime field.
  std::string to_string() const;

 private:
  void check_same(const FFElem& o) const;
  FiniteField::Ptr field_;
  std::vector<std::uint64_t> c_;
};

inline FFElem zero_like(const FFElem& x) { return x.field()->zero(); }
inline FFElem one_like(const FFElem& x) { return x.field()->one(); }
inline bool is_zero(const FFElem& x) { return x.is_zero(); }
inline FFElem inverse(const FFElem& x) { return x.inv(); }
bool lex_less(const FFElem& a, const FFElem& b);
std::ostream& operator<<(std::ostream& os, const FFElem& x);

// Euler criterion; 0 counts as a square.
bool ff_is_square(const FFElem& x);
// generator^((q-1)/h); throws unless h | q-1.
FFElem ff_root_of_unity(const FiniteField::Ptr& field, const Integer& h);

// Rabin irreducibility test over F_p.
bool is_irreducible_mod_p(const Poly<Zp>& f);
Poly<Zp> to_zp_poly(const IntPoly& f, std::uint64_t p);
IntPoly lift_zp_poly(const Poly<Zp>& f);

// Phi_d(x) evaluated at an integer.
Integer cyclotomic_value(int d, const Integer& x);
// Multiplicative order of p modulo h (h coprime to p).
int mult_order_mod(std::uint64_t p, std::uint64_t h);

// Parse "c0,c1,..." (or a bare integer) into an element of `field`.
FFElem parse_ff(const FiniteField::Ptr& field, const std::string& text);

}  // namespace galhecke
