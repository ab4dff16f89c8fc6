#include "galhecke/exactalg/real_roots.hpp"

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/matrix.hpp"

namespace galhecke {

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int changes_at(const std::vector<QPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : chain) s.push_back(sgn(p(x)));
  return sign_changes(s);
}

}  // namespace

std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    const QPoly r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

bool is_squarefree_over_q(const IntPoly& f) {
  const QPoly q = to_qpoly(f);
  return gcd(q, q.derivative()).degree() == 0;
}

int real_root_count(const IntPoly& f) {
  if (f.is_zero()) throw DomainError("real_root_count of the zero polynomial");
  if (f.degree() == 0) return 0;
  if (!is_squarefree_over_q(f)) throw DomainError("real_root_count needs a squarefree polynomial");
  const auto chain = sturm_chain(to_qpoly(f));
  std::vector<int> at_pos, at_neg;
  for (const auto& p : chain) {
    const int s = sgn(p.lead());
    at_pos.push_back(s);
    at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

int real_root_count_in(const IntPoly& f, const Rational& a, const Rational& b) {
  if (!is_squarefree_over_q(f)) throw DomainError("real_root_count needs a squarefree polynomial");
  if (f.degree() == 0) return 0;
  const auto chain = sturm_chain(to_qpoly(f));
  return changes_at(chain, a) - changes_at(chain, b);
}

Rational root_bound(const QPoly& f) {
  Rational m = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rational r = abs(f[i] / f.lead());
    if (r > m) m = r;
  }
  return m + 1;
}

Integer resultant(const IntPoly& f, const IntPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const std::size_t sz = static_cast<std::size_t>(m + n);
  Matrix<Rational> s(sz, sz, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = f[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = g[n - j];
  const Rational d = determinant(s);
  return Integer(d.get_num());
}

Integer poly_discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 2) throw DomainError("discriminant needs degree >= 2");
  Integer r = resultant(f, f.derivative());
  if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
  return r / f.lead();
}

}  // namespace galhecke
