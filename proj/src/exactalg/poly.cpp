#include "galhecke/exactalg/poly.hpp"

#include <sstream>

namespace galhecke {

IntPoly int_poly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Integer> v;
  for (long c : coeffs_low_first) v.emplace_back(c);
  return IntPoly(Integer(0), std::move(v));
}

QPoly to_qpoly(const IntPoly& f) {
  return map_coeffs(f, Rational(0), [](const Integer& c) { return Rational(c); });
}

IntPoly to_intpoly(const QPoly& f) {
  return map_coeffs(f, Integer(0), [](const Rational& c) {
    if (c.get_den() != 1) throw DomainError("coefficient " + c.get_str() + " is not integral");
    return Integer(c.get_num());
  });
}

IntPoly parse_int_poly(const std::string& text) {
  std::istringstream is(text);
  std::vector<Integer> v;
  std::string tok;
  while (is >> tok) v.push_back(parse_integer(tok));
  if (v.empty()) throw ValidationError("empty coefficient list");
  return IntPoly(Integer(0), std::move(v));
}

Rational rational_content(const QPoly& f) {
  if (f.is_zero()) return 0;
  Integer num = 0, den = 1;
  for (const auto& c : f.coeffs()) {
    num = gcd(num, Integer(c.get_num()));
    den = lcm(den, Integer(c.get_den()));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer content(const IntPoly& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  return g;
}

}  // namespace galhecke
