#pragma once

#include <vector>

#include "galhecke/exactalg/poly.hpp"

namespace galhecke {

// Sturm chain f, f', -rem(...), ... over Q.
std::vector<QPoly> sturm_chain(const QPoly& f);

// Number of distinct real roots of a squarefree f; throws on repeated roots.
int real_root_count(const IntPoly& f);

// Number of distinct roots of squarefree f in the half-open interval (a, b].
int real_root_count_in(const IntPoly& f, const Rational& a, const Rational& b);

// Cauchy bound: every real root has absolute value < bound.
Rational root_bound(const QPoly& f);

bool is_squarefree_over_q(const IntPoly& f);

Integer resultant(const IntPoly& f, const IntPoly& g);
Integer poly_discriminant(const IntPoly& f);

}  // namespace galhecke
