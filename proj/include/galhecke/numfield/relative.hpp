#pragma once

#include <map>
#include <string>
#include <utility>

#include "galhecke/numfield/number_field.hpp"

namespace galhecke {

// Integer polynomial in the two symbols a and b: (i, j) -> coefficient of a^i b^j.
struct BiPoly {
  std::map<std::pair<int, int>, Integer> terms;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  bool operator==(const BiPoly& o) const { return terms == o.terms; }
  bool is_zero() const { return terms.empty(); }
  std::string to_string() const;
};

// Grammar: sums and products of integers, a, b, parentheses and ^n, with
// juxtaposition as multiplication ("627ab", "2*a^3*b").
BiPoly parse_bipoly(const std::string& text);

// Element of K = F[b], b a root of f(x)/(x - a), stored as a matrix over F in
// terms of the companion matrix of f(x)/(x - a).
class RelElem {
 public:
  RelElem(NumberField::Ptr base, Matrix<NFElem> mat);

  static Matrix<NFElem> companion_b(const NumberField::Ptr& base);
  static RelElem from_bipoly(const NumberField::Ptr& base, const BiPoly& g);

  const Matrix<NFElem>& mat() const noexcept { return mat_; }
  RelElem operator+(const RelElem& o) const { return RelElem(base_, mat_ + o.mat_); }
  RelElem operator*(const RelElem& o) const { return RelElem(base_, mat_ * o.mat_); }
  NFElem norm() const;

 private:
  NumberField::Ptr base_;
  Matrix<NFElem> mat_;
};

// N_{K/F}(g(a, b)).
NFElem rel_norm(const BiPoly& g, const NumberField::Ptr& field);
NFElem rel_norm(const std::string& gexpr, const NumberField::Ptr& field);

}  // namespace galhecke
