#include "galhecke/numfield/two_adic.hpp"

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/polyfactor.hpp"

namespace galhecke {

namespace {

Matrix<Rational> inverse_matrix(const Matrix<Rational>& m) {
  const std::size_t n = m.rows();
  Matrix<Rational> aug(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("singular basis matrix");
  Matrix<Rational> inv(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Integer> reduce_mod(std::vector<Integer> v, const Integer& m) {
  for (auto& x : v) x = mod_floor(x, m);
  return v;
}

Matrix<Zp> to_f2(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  Matrix<Zp> m(rows.size(), cols, Zp(0, 2));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Zp(rows[i][j], 2);
  return m;
}

std::vector<Integer> lift_f2(const std::vector<Zp>& v) {
  std::vector<Integer> out;
  for (const auto& x : v) out.emplace_back(static_cast<unsigned long>(x.value()));
  return out;
}

std::vector<Integer> unit_vec(std::size_t n, std::size_t i) {
  std::vector<Integer> v(n, Integer(0));
  v[i] = 1;
  return v;
}

// x -> x^(2^t) on O/2O with 2^t >= n; its kernel is the radical of 2O.
std::vector<std::vector<Integer>> radical_mod2(const Order& o) {
  const std::size_t n = static_cast<std::size_t>(o.degree());
  const Integer two = 2;
  std::size_t t = 0;
  while ((std::size_t{1} << t) < n) ++t;
  std::vector<std::vector<Integer>> images;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = unit_vec(n, i);
    for (std::size_t k = 0; k < t; ++k) x = o.mul(x, x, two);
    if (t == 0) x = reduce_mod(x, two);
    images.push_back(x);
  }
  // kernel of v -> v * Images: right kernel of Images^T
  const Matrix<Zp> m = to_f2(images, n).transpose();
  std::vector<std::vector<Integer>> out;
  for (const auto& v : kernel(m)) out.push_back(lift_f2(v));
  return out;
}

// One Round 2 step at 2. Returns true and replaces o when it enlarges.
bool enlarge(Order& o, std::vector<std::vector<Integer>>& radical_out) {
  const std::size_t n = static_cast<std::size_t>(o.degree());
  const Integer two = 2;
  const auto rad = radical_mod2(o);
  radical_out = rad;
  if (rad.empty()) return false;
  // I = rad + 2O, as rows in O-coordinates
  std::vector<std::vector<Integer>> gens = rad;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = unit_vec(n, i);
    v[i] = 2;
    gens.push_back(v);
  }
  const auto ibasis = hnf_rows(gens, n);
  Matrix<Rational> ib(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ib(i, j) = Rational(ibasis[i][j]);
  const Matrix<Rational> ibinv = inverse_matrix(ib);
  // Row i of the map: u = e_i -> (coords of e_i * gamma_k in the I basis) mod 2
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Integer> row;
    for (std::size_t k = 0; k < n; ++k) {
      const auto prod = o.mul(unit_vec(n, i), ibasis[k], Integer(0));
      for (std::size_t j = 0; j < n; ++j) {
        Rational c = 0;
        for (std::size_t l = 0; l < n; ++l) c += Rational(prod[l]) * ibinv(l, j);
        if (c.get_den() != 1) throw DomainError("radical is not an ideal");
        row.push_back(Integer(c.get_num()));
      }
    }
    rows.push_back(row);
  }
  const Matrix<Zp> m = to_f2(rows, n * n).transpose();
  const auto ker = kernel(m);
  if (ker.empty()) return false;
  std::vector<std::vector<Integer>> ugens;
  for (const auto& v : ker) ugens.push_back(lift_f2(v));
  for (std::size_t i = 0; i < n; ++i) {
    auto v = unit_vec(n, i);
    v[i] = 2;
    ugens.push_back(v);
  }
  const auto ubasis = hnf_rows(ugens, n);
  Matrix<Rational> newb(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = 0;
      for (std::size_t l = 0; l < n; ++l) c += Rational(ubasis[i][l]) * o.basis()(l, j);
      newb(i, j) = c / 2;
    }
  o = Order(o.field(), newb);
  return true;
}

}  // namespace

std::vector<std::vector<Integer>> hnf_rows(std::vector<std::vector<Integer>> a, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < a.size(); ++c) {
    // gcd-combine all rows below r into row r at column c
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (is_zero(a[i][c])) continue;
      if (is_zero(a[r][c])) {
        std::swap(a[r], a[i]);
        continue;
      }
      const auto bz = xgcd(a[r][c], a[i][c]);
      const Integer p = a[r][c] / bz.g, q = a[i][c] / bz.g;
      for (std::size_t k = 0; k < n; ++k) {
        const Integer x = a[r][k], y = a[i][k];
        a[r][k] = bz.u * x + bz.v * y;
        a[i][k] = -q * x + p * y;
      }
    }
    if (is_zero(a[r][c])) continue;
    if (a[r][c] < 0)
      for (auto& v : a[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      const Integer f = [&] {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        return q;
      }();
      if (is_zero(f)) continue;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  if (r < n) throw DomainError("lattice is not of full rank");
  a.resize(n);
  return a;
}

Order::Order(NumberField::Ptr field, Matrix<Rational> basis) : field_(std::move(field)), basis_(std::move(basis)) {
  const std::size_t n = basis_.rows();
  if (n != static_cast<std::size_t>(field_->degree()) || basis_.cols() != n) throw ValidationError("order basis has the wrong shape");
  inv_ = inverse_matrix(basis_);
  mult_.assign(n, std::vector<std::vector<Integer>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const NFElem prod = element(i) * element(j);
      mult_[i][j] = coords(prod);
      mult_[j][i] = mult_[i][j];
    }
  bool has_one = true;
  try {
    coords(field_->one());
  } catch (const DomainError&) {
    has_one = false;
  }
  if (!has_one) throw ValidationError("supplied lattice does not contain 1");
}

NFElem Order::element(std::size_t i) const { return field_->from_coords(basis_.row(i)); }

std::vector<Integer> Order::coords(const NFElem& x) const {
  const std::size_t n = basis_.rows();
  std::vector<Integer> out;
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = 0;
    for (std::size_t l = 0; l < n; ++l) c += x.coords()[l] * inv_(l, j);
    if (c.get_den() != 1) throw DomainError("element " + x.to_string() + " is not in the order");
    out.push_back(Integer(c.get_num()));
  }
  return out;
}

bool Order::contains(const NFElem& x) const {
  try {
    coords(x);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

std::vector<Integer> Order::mul(const std::vector<Integer>& x, const std::vector<Integer>& y, const Integer& m) const {
  const std::size_t n = basis_.rows();
  std::vector<Integer> out(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(y[j])) continue;
      const Integer c = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) out[k] += c * mult_[i][j][k];
    }
  }
  if (m != 0) out = reduce_mod(out, m);
  return out;
}

Integer Order::index_over_za() const {
  const Rational d = abs(determinant(basis_));
  const Rational inv = 1 / d;
  if (inv.get_den() != 1) throw DomainError("order does not contain Z[a]");
  return Integer(inv.get_num());
}

TwoAdicContext TwoAdicContext::compute(const NumberField::Ptr& field) {
  const std::size_t n = static_cast<std::size_t>(field->degree());
  TwoAdicContext ctx(Order(field, Matrix<Rational>::identity(n, Rational(0))));
  ctx.finish();
  return ctx;
}

TwoAdicContext TwoAdicContext::from_basis(const NumberField::Ptr& field, const std::vector<NFElem>& basis) {
  const std::size_t n = static_cast<std::size_t>(field->degree());
  if (basis.size() != n) throw ValidationError("basis2 needs " + std::to_string(n) + " elements");
  Matrix<Rational> b(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = basis[i].coords()[j];
  Order o = [&] {
    try {
      return Order(field, b);
    } catch (const DomainError& e) {
      throw ValidationError(std::string("basis2 does not span an order: ") + e.what());
    }
  }();
  TwoAdicContext ctx(std::move(o));
  ctx.finish();
  return ctx;
}

void TwoAdicContext::finish() {
  std::vector<std::vector<Integer>> rad;
  while (enlarge(order_, rad)) {
    ++rounds_;
    if (rounds_ > 64) throw DomainError("Round 2 did not terminate");
  }
  unramified_ = rad.empty();
  primes_.clear();
  if (!unramified_) return;
  const std::size_t n = static_cast<std::size_t>(order_.degree());
  const Integer two = 2, four = 4;
  // Boolean subalgebra: kernel of x -> x^2 - x on O/2O.
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    auto e = unit_vec(n, i);
    auto sq = order_.mul(e, e, two);
    sq[i] -= 1;
    rows.push_back(reduce_mod(sq, two));
  }
  const auto bool_basis = kernel(to_f2(rows, n).transpose());
  const std::size_t r = bool_basis.size();
  std::vector<std::vector<Integer>> idems;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<Integer> v(n, Integer(0));
    for (std::size_t b = 0; b < r; ++b)
      if (mask >> b & 1) {
        const auto l = lift_f2(bool_basis[b]);
        for (std::size_t k = 0; k < n; ++k) v[k] += l[k];
      }
    idems.push_back(reduce_mod(v, two));
  }
  for (const auto& e : idems) {
    bool primitive = true;
    for (const auto& f : idems) {
      const auto ef = order_.mul(e, f, two);
      const bool is_zero_v = std::all_of(ef.begin(), ef.end(), [](const Integer& x) { return x == 0; });
      if (!is_zero_v && ef != e) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    // lift: e <- 3e^2 - 2e^3 mod 4
    const auto e2 = order_.mul(e, e, four);
    const auto e3 = order_.mul(e2, e, four);
    std::vector<Integer> lifted(n);
    for (std::size_t k = 0; k < n; ++k) lifted[k] = mod_floor(3 * e2[k] - 2 * e3[k], four);
    if (order_.mul(lifted, lifted, four) != lifted) throw DomainError("idempotent lift failed");
    // residue degree = dim of e * (O/2O)
    std::vector<std::vector<Integer>> img;
    for (std::size_t i = 0; i < n; ++i) img.push_back(order_.mul(e, unit_vec(n, i), two));
    PrimeAbove2 pr;
    pr.residue_degree = static_cast<int>(rank(to_f2(img, n)));
    pr.idempotent_mod4 = lifted;
    primes_.push_back(pr);
  }
  std::sort(primes_.begin(), primes_.end(), [](const PrimeAbove2& a, const PrimeAbove2& b) {
    if (a.residue_degree != b.residue_degree) return a.residue_degree < b.residue_degree;
    return a.idempotent_mod4 < b.idempotent_mod4;
  });
}

std::vector<NFElem> TwoAdicContext::basis2() const {
  std::vector<NFElem> out;
  for (int i = 0; i < order_.degree(); ++i) out.push_back(order_.element(static_cast<std::size_t>(i)));
  return out;
}

bool two_adic_unramified(const NFElem& s, const TwoAdicContext& ctx) {
  if (!ctx.unramified()) throw UndeterminedError("2 is ramified in F; the mod P^2 square test does not apply");
  const Order& o = ctx.order();
  std::vector<Integer> sc;
  try {
    sc = o.coords(s);
  } catch (const DomainError&) {
    throw DomainError("s is not integral at 2");
  }
  const Integer two = 2, four = 4;
  for (const auto& pr : ctx.primes2()) {
    const auto es = o.mul(pr.idempotent_mod4, sc, two);
    if (std::all_of(es.begin(), es.end(), [](const Integer& x) { return x == 0; })) continue;
    // e * s^(q-1) == e mod 4 with q = 2^d
    const unsigned long qm1 = (1UL << pr.residue_degree) - 1;
    std::vector<Integer> acc = pr.idempotent_mod4;
    std::vector<Integer> base = reduce_mod(sc, four);
    unsigned long e = qm1;
    while (e) {
      if (e & 1) acc = o.mul(acc, base, four);
      base = o.mul(base, base, four);
      e >>= 1;
    }
    return acc == pr.idempotent_mod4;
  }
  throw DomainError("no coprime prime above 2");
}

bool dedekind_p_maximal(const IntPoly& f, std::uint64_t p) {
  const auto facs = factor_poly_mod_l(f, p);
  const Zp zero(0, p);
  ZpPoly g = ZpPoly::constant(Zp(1, p)), h = ZpPoly::constant(Zp(1, p));
  for (const auto& [fac, e] : facs) {
    g = g * fac;
    for (int i = 1; i < e; ++i) h = h * fac;
  }
  const IntPoly G = lift_zp_poly(g), H = lift_zp_poly(h);
  const IntPoly diff = G * H - f;
  const Integer P(static_cast<unsigned long>(p));
  const IntPoly F = map_coeffs(diff, Integer(0), [&](const Integer& c) {
    if (!mpz_divisible_p(c.get_mpz_t(), P.get_mpz_t())) throw DomainError("Dedekind lift mismatch");
    return Integer(c / P);
  });
  const ZpPoly Fp = to_zp_poly(F, p);
  ZpPoly d = gcd(g, h);
  d = Fp.is_zero() ? d : gcd(d, Fp);
  return d.degree() == 0;
}

}  // namespace galhecke
