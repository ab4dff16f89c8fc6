#pragma once

#include <map>
#include <string>
#include <vector>

#include "galhecke/exactalg/integer.hpp"

namespace galhecke {

// Indefinite binary quadratic form A x^2 + B x y + C y^2.
struct QuadForm {
  Integer A, B, C;

  Integer disc() const { return B * B - 4 * A * C; }
  bool operator==(const QuadForm& o) const { return A == o.A && B == o.B && C == o.C; }
  bool operator<(const QuadForm& o) const;
  std::string to_string() const;
};

bool is_reduced(const QuadForm& f);
// One step of the reduction operator rho (properly equivalent form).
QuadForm rho(const QuadForm& f);
// Properly equivalent reduced form.
QuadForm reduce(const QuadForm& f);
// Full rho-cycle of reduced forms equivalent to f, starting at its least element.
std::vector<QuadForm> reduce_cycle(const QuadForm& f);
// Gaussian composition followed by reduction.
QuadForm compose(const QuadForm& f, const QuadForm& g);

class ClassGroup {
 public:
  explicit ClassGroup(const Integer& D);

  const Integer& disc() const noexcept { return D_; }
  int h() const noexcept { return static_cast<int>(cycles_.size()); }
  const std::vector<std::vector<QuadForm>>& cycles() const noexcept { return cycles_; }
  // First element of each cycle.
  std::vector<QuadForm> reps() const;
  QuadForm principal() const;

  // Cycle index of the class of f; the principal class has index 0.
  int class_of(const QuadForm& f) const;
  bool equivalent(const QuadForm& f, const QuadForm& g) const { return class_of(f) == class_of(g); }
  QuadForm power(const QuadForm& f, long e) const;
  int order(const QuadForm& f) const;
  bool is_cyclic() const;
  // Least reduced non-principal form of order h (the principal form when h = 1).
  QuadForm generator() const;

 private:
  Integer D_;
  std::vector<std::vector<QuadForm>> cycles_;
  std::map<QuadForm, int> index_;
};

ClassGroup class_group(const Integer& D);

// Form (l, B, C) of discriminant D; throws "inert" if l does not split.
QuadForm prime_form(const Integer& D, const Integer& l);
int prime_class_order(const ClassGroup& cg, const Integer& l);
// e in [0, h) with generator^e ~ form.
int dlog_in_cyclic(const ClassGroup& cg, const QuadForm& form, const QuadForm& generator);

}  // namespace galhecke
