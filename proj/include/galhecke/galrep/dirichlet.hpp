#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galhecke/exactalg/finite_field.hpp"

namespace galhecke {

// Canonical generators of (Z/N)^x: per prime power (ascending), the least
// primitive root mod q^e for odd q; -1 and 5 for 2^e (e >= 3); -1 for 4.
// Each generator is lifted by CRT to be 1 at the other prime powers.
struct UnitGenerator {
  std::uint64_t value;
  std::uint64_t order;
};
std::vector<UnitGenerator> unit_generators(std::uint64_t N);

// F_{p^k}-valued Dirichlet character, stored as its full value table.
class DirichletChar {
 public:
  DirichletChar() = default;
  static DirichletChar trivial(const FiniteField::Ptr& field, std::uint64_t N = 1);
  // Values on unit_generators(N), in order.
  static DirichletChar from_generators(const FiniteField::Ptr& field, std::uint64_t N, const std::vector<FFElem>& values);
  // Legendre symbol mod an odd prime q.
  static DirichletChar quadratic(const FiniteField::Ptr& field, std::uint64_t q);

  std::uint64_t modulus() const noexcept { return N_; }
  const FiniteField::Ptr& field() const noexcept { return field_; }
  // chi(a), zero when gcd(a, N) > 1.
  FFElem operator()(const Integer& a) const;
  FFElem operator()(std::int64_t a) const { return (*this)(Integer(static_cast<long>(a))); }
  // +1 or -1.
  int parity() const;
  bool is_trivial() const;
  std::uint64_t order() const;

  std::uint64_t conductor() const;
  // Conductor exponent at the prime q.
  int conductor_exponent(std::uint64_t q) const;
  DirichletChar primitive() const;
  // Same character viewed mod a multiple M of its modulus.
  DirichletChar lift_to(std::uint64_t M) const;
  DirichletChar to_field(const FiniteField::Ptr& target) const;

  DirichletChar operator*(const DirichletChar& o) const;
  DirichletChar inv() const;
  DirichletChar pow(long e) const;
  // Equality of the underlying primitive characters.
  bool same_primitive(const DirichletChar& o) const;
  bool operator==(const DirichletChar& o) const;

  std::vector<FFElem> generator_values() const;
  std::string to_string() const;

 private:
  DirichletChar(FiniteField::Ptr field, std::uint64_t N, std::vector<FFElem> table)
      : field_(std::move(field)), N_(N), table_(std::move(table)) {}
  FiniteField::Ptr field_;
  std::uint64_t N_ = 1;
  std::vector<FFElem> table_;
};

}  // namespace galhecke
