#pragma once

#include <vector>

#include "galhecke/numfield/number_field.hpp"

namespace galhecke {

// An order of F given by a Z-basis (rows, power-basis coordinates) with its
// integral structure constants.
class Order {
 public:
  Order(NumberField::Ptr field, Matrix<Rational> basis);

  const NumberField::Ptr& field() const noexcept { return field_; }
  const Matrix<Rational>& basis() const noexcept { return basis_; }
  int degree() const noexcept { return static_cast<int>(basis_.rows()); }
  NFElem element(std::size_t i) const;
  // Coordinates in this basis; throws if x is not in the order.
  std::vector<Integer> coords(const NFElem& x) const;
  bool contains(const NFElem& x) const;
  // Product of two coordinate vectors, coefficients reduced mod m (m = 0: exact).
  std::vector<Integer> mul(const std::vector<Integer>& x, const std::vector<Integer>& y, const Integer& m) const;
  // [O : Z[a]] = 1 / |det basis|.
  Integer index_over_za() const;

 private:
  NumberField::Ptr field_;
  Matrix<Rational> basis_, inv_;
  std::vector<std::vector<std::vector<Integer>>> mult_;
};

// Prime above 2, stored as its idempotent in O/4O (coordinates in the
// 2-maximal basis) together with its residue degree.
struct PrimeAbove2 {
  int residue_degree = 0;
  std::vector<Integer> idempotent_mod4;
};

class TwoAdicContext {
 public:
  // Round 2 at the prime 2 starting from Z[a] (or from a supplied order).
  static TwoAdicContext compute(const NumberField::Ptr& field);
  static TwoAdicContext from_basis(const NumberField::Ptr& field, const std::vector<NFElem>& basis);

  const Order& order() const noexcept { return order_; }
  std::vector<NFElem> basis2() const;
  bool unramified() const noexcept { return unramified_; }
  const std::vector<PrimeAbove2>& primes2() const noexcept { return primes_; }
  int rounds() const noexcept { return rounds_; }
  // 2-part of [O_F : Z[a]].
  Integer index2() const { return order_.index_over_za(); }

 private:
  explicit TwoAdicContext(Order o) : order_(std::move(o)) {}
  void finish();

  Order order_;
  bool unramified_ = false;
  std::vector<PrimeAbove2> primes_;
  int rounds_ = 0;
};

// s^{q-1} = 1 mod P^2 at the first prime P above 2 not containing s.
bool two_adic_unramified(const NFElem& s, const TwoAdicContext& ctx);

// Dedekind criterion: is Z[a] p-maximal?
bool dedekind_p_maximal(const IntPoly& f, std::uint64_t p);

// Row Hermite normal form of a full-rank integer lattice given by generators.
std::vector<std::vector<Integer>> hnf_rows(std::vector<std::vector<Integer>> gens, std::size_t n);

}  // namespace galhecke
