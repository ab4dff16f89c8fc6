#include "galhecke/galrep/galois_rep.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/matrix.hpp"
#include "galhecke/exactalg/real_roots.hpp"

namespace galhecke {

namespace {

long mod_pm1(long v, std::uint64_t p) {
  const long m = static_cast<long>(p) - 1;
  long r = v % m;
  if (r < 0) r += m;
  return r;
}

Integer I(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

// l^j mod p for a possibly negative j.
std::uint64_t lpow(std::uint64_t l, long j, std::uint64_t p) {
  return powmod_u64(l % p, static_cast<std::uint64_t>(mod_pm1(j, p)), p);
}

FiniteField::Ptr poly_field(const FFPoly& f) { return f.zero().field(); }

FFPoly ff_poly(const FiniteField::Ptr& F, std::vector<FFElem> c) { return FFPoly(F->zero(), std::move(c)); }

FFPoly mul_common(const FFPoly& a, const FFPoly& b) {
  const auto F = common_field(poly_field(a), poly_field(b));
  return embed_poly(a, F) * embed_poly(b, F);
}

}  // namespace

// ---- A4-hat -------------------------------------------------------------

std::string to_string(A4Class c) {
  switch (c) {
    case A4Class::identity: return "identity";
    case A4Class::double_transposition: return "double_transposition";
    case A4Class::three_cycle: return "three_cycle";
  }
  return "?";
}

int a4hat_trace(int element_order) {
  switch (element_order) {
    case 1: return 2;
    case 2: return -2;
    case 3: return -1;
    case 4: return 0;
    case 6: return 1;
    default: throw DomainError("no element of order " + std::to_string(element_order) + " in the double cover of A4");
  }
}

int verify_a4hat_trace_table(const FiniteField::Ptr& F) {
  if (F->p() == 2) throw DomainError("trace table check needs odd characteristic");
  const FFElem zero = F->zero(), one = F->one();
  const auto roots = roots_in_field(ff_poly(F, {one, zero, one}));
  if (roots.empty()) throw DomainError("no square root of -1 in " + F->name());
  const FFElem i = roots.front();
  using M = Matrix<FFElem>;
  const M id = M::identity(2, zero);
  M qi(2, 2, zero), qj(2, 2, zero);
  qi(0, 0) = i;
  qi(1, 1) = -i;
  qj(0, 1) = one;
  qj(1, 0) = -one;
  const M qk = qi * qj;
  const M w = (id + qi + qj + qk) * (-(one + one).inv());
  std::vector<M> group{id};
  for (std::size_t at = 0; at < group.size(); ++at) {
    for (const M* g : std::vector<const M*>{&qi, &qj, &w}) {
      const M x = group[at] * *g;
      if (std::find(group.begin(), group.end(), x) == group.end()) group.push_back(x);
      if (group.size() > 24) throw DomainError("generated group is larger than 24");
    }
  }
  if (group.size() != 24) throw DomainError("generated group has order " + std::to_string(group.size()));
  std::map<int, int> count;
  for (const M& g : group) {
    int ord = 1;
    M x = g;
    while (x != id) {
      x = x * g;
      if (++ord > 12) throw DomainError("element order too large");
    }
    const FFElem tr = g(0, 0) + g(1, 1);
    if (tr != F->from_int(static_cast<std::int64_t>(a4hat_trace(ord))))
      throw DomainError("trace table mismatch at order " + std::to_string(ord));
    ++count[ord];
  }
  const std::map<int, int> want{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}};
  if (count != want) throw DomainError("class sizes of the double cover do not match");
  return static_cast<int>(group.size());
}

FrobClassA4 a4_frob_class(const IntPoly& f, const NFElem& s, std::uint64_t l) {
  if (l == 2) throw DataGapError("bad prime 2 for the quartic model");
  if (mpz_divisible_ui_p(poly_discriminant(f).get_mpz_t(), l))
    throw DataGapError("bad prime " + std::to_string(l) + " (divides disc f)");
  const auto fac = factor_poly_mod_l(f, l);
  std::vector<int> shape;
  for (const auto& [g, e] : fac) {
    if (e > 1) throw DataGapError("bad prime " + std::to_string(l) + " (f not squarefree mod l)");
    shape.push_back(g.degree());
  }
  std::sort(shape.begin(), shape.end());
  A4Class label;
  if (shape == std::vector<int>{1, 1, 1, 1}) label = A4Class::identity;
  else if (shape == std::vector<int>{1, 3}) label = A4Class::three_cycle;
  else if (shape == std::vector<int>{2, 2}) label = A4Class::double_transposition;
  else throw DomainError("not an A4 polynomial at " + std::to_string(l));
  if (label == A4Class::double_transposition) return {label, 4};
  const bool split = ff_is_square(residue_image(s, l, fac.front().first));
  if (label == A4Class::identity) return {label, split ? 1 : 2};
  return {label, split ? 3 : 6};
}

// ---- dihedral -----------------------------------------------------------

IntPoly cyclotomic_poly(int n) {
  if (n < 1) throw DomainError("cyclotomic_poly needs n >= 1");
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1, Integer(0));
  c[0] = -1;
  c[static_cast<std::size_t>(n)] = 1;
  IntPoly r(Integer(0), c);
  for (int d = 1; d < n; ++d)
    if (n % d == 0) r = r / cyclotomic_poly(d);
  return r;
}

IntPoly cos_minpoly(int h) {
  if (h < 3) throw DomainError("cos_minpoly needs h >= 3");
  const IntPoly phi = cyclotomic_poly(h);
  const int d = phi.degree() / 2;
  const IntPoly x = IntPoly::x(Integer(0));
  std::vector<IntPoly> v{IntPoly::constant(Integer(2)), x};
  for (int i = 2; i <= d; ++i) v.push_back(x * v[static_cast<std::size_t>(i - 1)] - v[static_cast<std::size_t>(i - 2)]);
  IntPoly r = IntPoly::constant(phi[d]);
  for (int i = 1; i <= d; ++i) r = r + v[static_cast<std::size_t>(i)] * phi[d + i];
  return r;
}

std::shared_ptr<const DihedralData> dihedral_data(std::uint64_t p) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const DihedralData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  if (p % 4 != 1 || !is_probable_prime(I(p))) throw DomainError("dihedral atoms need a prime p = 1 mod 4");
  auto d = std::make_shared<DihedralData>();
  d->p = p;
  d->cg = std::make_shared<const ClassGroup>(class_group(I(p)));
  const int h = d->cg->h();
  if (h < 3) throw DomainError("h(" + std::to_string(p) + ") = " + std::to_string(h) + ": no dihedral representation");
  if (!d->cg->is_cyclic()) throw UnsupportedError("non-cyclic class group at " + std::to_string(p));
  d->generator = d->cg->generator();
  const IntPoly psi = cos_minpoly(h);
  const auto fac = factor_poly_mod_l(psi, p);
  d->field = FiniteField::get(p, fac.front().first.degree());
  const auto roots = roots_in_field(to_ff_poly(psi, d->field));
  if (roots.empty()) throw DomainError("2cos(2pi/h) has no root in " + d->field->name());
  d->tau = roots.front();
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(p, std::move(d)).first->second;
}

FFElem dihedral_trace_value(const DihedralData& d, long n) {
  const long h = d.cg->h();
  n %= h;
  if (n < 0) n += h;
  FFElem prev = d.field->from_int(std::int64_t{2}), cur = d.tau;
  if (n == 0) return prev;
  for (long i = 1; i < n; ++i) {
    FFElem next = d.tau * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---- constructors -------------------------------------------------------

RepPtr GaloisRep::character(std::uint64_t p, long j, const DirichletChar& chi) {
  if (!chi.field() || chi.field()->p() != p) throw DomainError("character values must lie in characteristic p");
  if (chi.modulus() % p == 0) throw DomainError("character modulus must be prime to p");
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::Char, p, 1));
  r->j = mod_pm1(j, p);
  r->chi = chi;
  return r;
}

RepPtr GaloisRep::omega_power(std::uint64_t p, long j) {
  return character(p, j, DirichletChar::trivial(FiniteField::get(p, 1)));
}

RepPtr GaloisRep::dihedral_rep(std::uint64_t p, int m) {
  auto data = dihedral_data(p);
  if (m % data->cg->h() == 0) throw DomainError("dihedral index m must be nonzero mod h");
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::Dihedral, p, 2));
  r->m = m;
  r->dihedral = std::move(data);
  return r;
}

RepPtr GaloisRep::a4hat(const A4Atom& atom, A4Lift lift) {
  if (atom.p % 3 != 1) throw DomainError("A4-hat atoms need p = 1 mod 3");
  if (!atom.f.is_zero() && atom.f.degree() != 4) throw DomainError("A4-hat atoms need a quartic");
  if (atom.realquad != 1 && atom.realquad != -1) throw ValidationError("realquad must be +1 or -1");
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::A4Hat, atom.p, 2));
  r->a4 = std::make_shared<const A4Atom>(atom);
  if (lift == A4Lift::e6) return twist(r, static_cast<long>((atom.p - 1) / 2));
  return r;
}

RepPtr GaloisRep::opaque(std::uint64_t p, std::string label, std::vector<long> exponents, int frob_inf_sign,
                         std::map<std::uint64_t, std::vector<LocalStep>> local_data) {
  if (exponents.empty()) throw ValidationError("opaque atom needs its inertia exponents");
  if (frob_inf_sign != 1 && frob_inf_sign != -1) throw ValidationError("Frob_inf sign must be +1 or -1");
  for (const auto& [q, steps] : local_data) {
    if (q == p) throw ValidationError("local data is for primes other than p");
    for (const auto& st : steps)
      if (st.order < 1 || st.fixed_dim < 0 || st.fixed_dim > static_cast<int>(exponents.size()))
        throw ValidationError("bad local data at " + std::to_string(q));
  }
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::Opaque, p, static_cast<int>(exponents.size())));
  r->label = std::move(label);
  for (long e : exponents) r->exponents.push_back(mod_pm1(e, p));
  r->frob_inf_sign = frob_inf_sign;
  r->local_data = std::move(local_data);
  return r;
}

RepPtr GaloisRep::twist(const RepPtr& rep, long j) {
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::Twist, rep->p(), rep->dim()));
  r->j = mod_pm1(j, rep->p());
  r->children = {rep};
  return r;
}

RepPtr GaloisRep::direct_sum(const std::vector<RepPtr>& parts) {
  if (parts.empty()) throw DomainError("empty direct sum");
  int dim = 0;
  for (const auto& c : parts) {
    if (c->p() != parts.front()->p()) throw DomainError("direct sum of representations at different p");
    dim += c->dim();
  }
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::DirectSum, parts.front()->p(), dim));
  r->children = parts;
  return r;
}

RepPtr GaloisRep::sym_square(const RepPtr& rep) {
  if (rep->dim() != 2) throw DomainError("symmetric square needs a 2-dimensional representation");
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::SymSquare, rep->p(), 3));
  r->children = {rep};
  return r;
}

RepPtr GaloisRep::contragredient(const RepPtr& rep) {
  auto r = std::shared_ptr<GaloisRep>(new GaloisRep(RepKind::Contragredient, rep->p(), rep->dim()));
  r->children = {rep};
  return r;
}

std::string GaloisRep::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case RepKind::Char:
      if (chi.is_trivial()) os << "omega^" << j;
      else os << "Char(j=" << j << ", " << chi.to_string() << ")";
      break;
    case RepKind::Dihedral: os << "Dihedral(p=" << p_ << ", m=" << m << ")"; break;
    case RepKind::A4Hat: os << "A4Hat(p=" << p_ << (a4->realquad > 0 ? ", real" : ", complex") << ")"; break;
    case RepKind::Opaque: os << "Opaque(" << label << ")"; break;
    case RepKind::Twist: os << "Twist(" << children[0]->describe() << ", " << j << ")"; break;
    case RepKind::DirectSum:
      for (std::size_t i = 0; i < children.size(); ++i) os << (i ? " + " : "") << children[i]->describe();
      break;
    case RepKind::SymSquare: os << "Sym2(" << children[0]->describe() << ")"; break;
    case RepKind::Contragredient: os << "Dual(" << children[0]->describe() << ")"; break;
  }
  return os.str();
}

// ---- blocks -------------------------------------------------------------

namespace {

void collect_blocks(const RepPtr& node, long j, bool dual, std::vector<RepPtr>& out) {
  switch (node->kind()) {
    case RepKind::DirectSum:
      for (const auto& c : node->children) collect_blocks(c, j, dual, out);
      return;
    case RepKind::Twist: collect_blocks(node->children[0], j + (dual ? -node->j : node->j), dual, out); return;
    case RepKind::Contragredient: collect_blocks(node->children[0], j, !dual, out); return;
    default: break;
  }
  RepPtr b = node;
  if (dual) b = GaloisRep::contragredient(b);
  if (mod_pm1(j, node->p()) != 0) b = GaloisRep::twist(b, j);
  out.push_back(b);
}

}  // namespace

std::vector<RepPtr> blocks(const RepPtr& rep) {
  std::vector<RepPtr> out;
  collect_blocks(rep, 0, false, out);
  return out;
}

// ---- Frobenius at l -----------------------------------------------------

FFPoly frob_charpoly(const RepPtr& rep, std::uint64_t l) {
  const std::uint64_t p = rep->p();
  if (!is_probable_prime(I(l))) throw DomainError(std::to_string(l) + " is not prime");
  if (l == p) throw DataGapError("Frobenius at p is not defined (ramified prime)");
  switch (rep->kind()) {
    case RepKind::Char: {
      if (rep->chi.modulus() % l == 0) throw DataGapError("ramified prime " + std::to_string(l) + " for " + rep->describe());
      const auto& F = rep->chi.field();
      const FFElem v = rep->chi(static_cast<std::int64_t>(l)) * F->from_int(I(lpow(l, rep->j, p)));
      return ff_poly(F, {F->one(), -v});
    }
    case RepKind::Dihedral: {
      const auto& d = *rep->dihedral;
      const auto& F = d.field;
      if (legendre(I(l), I(p)) < 0) return ff_poly(F, {F->one(), F->zero(), -F->one()});
      const QuadForm form = prime_form(I(p), I(l));
      const int e = dlog_in_cyclic(*d.cg, form, d.generator);
      const FFElem t = dihedral_trace_value(d, static_cast<long>(rep->m) * e);
      return ff_poly(F, {F->one(), -t, F->one()});
    }
    case RepKind::A4Hat: {
      static std::once_flag checked;
      std::call_once(checked, [] { verify_a4hat_trace_table(FiniteField::get(3, 2)); });
      if (rep->a4->f.is_zero() || !rep->a4->s)
        throw DataGapError("A4-hat atom at " + std::to_string(p) + " has no quartic data; Frobenius unavailable");
      const auto cls = a4_frob_class(rep->a4->f, *rep->a4->s, l);
      const auto F = FiniteField::get(p, 1);
      const FFElem t = F->from_int(static_cast<std::int64_t>(a4hat_trace(cls.lift_order)));
      return ff_poly(F, {F->one(), -t, F->one()});
    }
    case RepKind::Opaque: throw DataGapError("no Frobenius data for " + rep->describe());
    case RepKind::Twist: {
      const FFPoly c = frob_charpoly(rep->children[0], l);
      const auto F = poly_field(c);
      const FFElem u = F->from_int(I(lpow(l, rep->j, p)));
      std::vector<FFElem> out;
      FFElem up = F->one();
      for (int i = 0; i <= c.degree(); ++i) {
        out.push_back(c[i] * up);
        up = up * u;
      }
      return ff_poly(F, std::move(out));
    }
    case RepKind::DirectSum: {
      FFPoly acc = frob_charpoly(rep->children[0], l);
      for (std::size_t i = 1; i < rep->children.size(); ++i) acc = mul_common(acc, frob_charpoly(rep->children[i], l));
      return acc;
    }
    case RepKind::SymSquare: return sym_square_charpoly(frob_charpoly(rep->children[0], l));
    case RepKind::Contragredient: {
      const FFPoly c = frob_charpoly(rep->children[0], l);
      const int n = c.degree();
      const FFElem inv = c[n].inv();
      std::vector<FFElem> out;
      for (int i = n; i >= 0; --i) out.push_back(c[i] * inv);
      return ff_poly(poly_field(c), std::move(out));
    }
  }
  throw DomainError("unknown representation node");
}

FFPoly sym_square_charpoly(const FFPoly& c) {
  if (c.degree() > 2) throw DomainError("sym_square_charpoly needs a 2-dimensional block");
  const auto F = poly_field(c);
  const FFElem t = -c[1], d = c[2];
  const FFElem e1 = t * t - d, e2 = d * t * t - d * d, e3 = d * d * d;
  return ff_poly(F, {F->one(), -e1, e2, -e3});
}

bool frob_available(const RepPtr& rep, std::uint64_t l) {
  if (l == rep->p()) return false;
  switch (rep->kind()) {
    case RepKind::Char: return rep->chi.modulus() % l != 0;
    case RepKind::Dihedral: return true;
    case RepKind::A4Hat:
      return !rep->a4->f.is_zero() && rep->a4->s.has_value() && l != 2 && !mpz_divisible_ui_p(poly_discriminant(rep->a4->f).get_mpz_t(), l);
    case RepKind::Opaque: return false;
    default:
      for (const auto& c : rep->children)
        if (!frob_available(c, l)) return false;
      return true;
  }
}

// ---- Frobenius at infinity ----------------------------------------------

std::vector<int> FrobInfBlock::eigenvalues() const {
  if (scalar) return std::vector<int>(static_cast<std::size_t>(dim), sign);
  return eigen;
}

namespace {

FrobInfBlock finf(const RepPtr& node) {
  FrobInfBlock b;
  b.dim = node->dim();
  switch (node->kind()) {
    case RepKind::Char: b.sign = node->chi.parity() * (node->j % 2 ? -1 : 1); break;
    case RepKind::Dihedral: b.sign = 1; break;
    case RepKind::A4Hat: b.sign = node->a4->realquad; break;
    case RepKind::Opaque: b.sign = node->frob_inf_sign; break;
    case RepKind::Twist: {
      b = finf(node->children[0]);
      if (node->j % 2) {
        b.sign = -b.sign;
        for (auto& e : b.eigen) e = -e;
      }
      break;
    }
    case RepKind::Contragredient: b = finf(node->children[0]); break;
    case RepKind::SymSquare: {
      const FrobInfBlock c = finf(node->children[0]);
      if (c.scalar) {
        b.sign = 1;
      } else {
        const int u = c.eigen[0], v = c.eigen[1];
        b.scalar = false;
        b.eigen = {u * u, u * v, v * v};
        if (u == v) {
          b.scalar = true;
          b.eigen.clear();
        }
      }
      break;
    }
    case RepKind::DirectSum: {
      std::vector<int> all;
      for (const auto& c : node->children) {
        const auto e = finf(c).eigenvalues();
        all.insert(all.end(), e.begin(), e.end());
      }
      if (std::all_of(all.begin(), all.end(), [&](int x) { return x == all.front(); })) {
        b.sign = all.front();
      } else {
        b.scalar = false;
        b.eigen = all;
      }
      break;
    }
  }
  return b;
}

std::vector<long> inert(const RepPtr& node) {
  const std::uint64_t p = node->p();
  switch (node->kind()) {
    case RepKind::Char: return {node->j};
    case RepKind::Dihedral: return {static_cast<long>((p - 1) / 2), 0};
    case RepKind::A4Hat: return {static_cast<long>((p - 1) / 3), mod_pm1(-static_cast<long>((p - 1) / 3), p)};
    case RepKind::Opaque: return node->exponents;
    case RepKind::Twist: {
      auto e = inert(node->children[0]);
      for (auto& x : e) x = mod_pm1(x + node->j, p);
      return e;
    }
    case RepKind::Contragredient: {
      auto e = inert(node->children[0]);
      for (auto& x : e) x = mod_pm1(-x, p);
      return e;
    }
    case RepKind::SymSquare: {
      const auto e = inert(node->children[0]);
      return {mod_pm1(2 * e[0], p), mod_pm1(e[0] + e[1], p), mod_pm1(2 * e[1], p)};
    }
    case RepKind::DirectSum: {
      std::vector<long> all;
      for (const auto& c : node->children) {
        const auto e = inert(c);
        all.insert(all.end(), e.begin(), e.end());
      }
      return all;
    }
  }
  return {};
}

DetDecomposition det_rec(const RepPtr& node) {
  const std::uint64_t p = node->p();
  const auto Fp = FiniteField::get(p, 1);
  switch (node->kind()) {
    case RepKind::Char: return {node->chi, node->j};
    case RepKind::Dihedral: return {DirichletChar::trivial(Fp), static_cast<long>((p - 1) / 2)};
    case RepKind::A4Hat: return {DirichletChar::trivial(Fp), 0};
    case RepKind::Opaque: {
      long d = 0;
      for (long e : node->exponents) d += e;
      return {DirichletChar::trivial(Fp), mod_pm1(d, p)};
    }
    case RepKind::Twist: {
      auto r = det_rec(node->children[0]);
      r.d = mod_pm1(r.d + node->j * node->dim(), p);
      return r;
    }
    case RepKind::Contragredient: {
      auto r = det_rec(node->children[0]);
      return {r.eps.inv(), mod_pm1(-r.d, p)};
    }
    case RepKind::SymSquare: {
      auto r = det_rec(node->children[0]);
      return {r.eps.pow(3), mod_pm1(3 * r.d, p)};
    }
    case RepKind::DirectSum: {
      DetDecomposition acc{DirichletChar::trivial(Fp), 0};
      for (const auto& c : node->children) {
        const auto r = det_rec(c);
        acc.eps = acc.eps * r.eps;
        acc.d = mod_pm1(acc.d + r.d, p);
      }
      return acc;
    }
  }
  return {};
}

// Order of the q-part of chi (its restriction to inertia at q).
std::uint64_t inertia_order(const DirichletChar& chi, std::uint64_t q) {
  const auto gens = unit_generators(chi.modulus());
  const auto vals = chi.generator_values();
  Integer ord = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    // generator i belongs to q iff it is 1 modulo the prime-to-q part
    std::uint64_t rest = chi.modulus();
    while (rest % q == 0) rest /= q;
    if (rest == chi.modulus() || gens[i].value % rest != 1 % rest) continue;
    ord = lcm(ord, vals[i].multiplicative_order());
  }
  return to_u64(ord);
}

BlockLocalData local_rec(const RepPtr& node, std::uint64_t q) {
  BlockLocalData b;
  b.dim = node->dim();
  switch (node->kind()) {
    case RepKind::Char: {
      const int e = node->chi.conductor_exponent(q);
      if (e == 0) return b;
      if (e > 1) throw UnsupportedError("wild ramification at " + std::to_string(q) + " in " + node->describe());
      b.steps = {{static_cast<int>(inertia_order(node->chi, q)), 0}};
      return b;
    }
    case RepKind::Dihedral:
    case RepKind::A4Hat: return b;
    case RepKind::Opaque: {
      const auto it = node->local_data.find(q);
      if (it != node->local_data.end()) b.steps = it->second;
      return b;
    }
    case RepKind::Twist:
    case RepKind::Contragredient: {
      b.steps = local_rec(node->children[0], q).steps;
      return b;
    }
    case RepKind::SymSquare: {
      if (conductor_exponent(node->children[0], q) != 0)
        throw UnsupportedError("symmetric square of a block ramified at " + std::to_string(q));
      return b;
    }
    case RepKind::DirectSum: throw DomainError("direct sum inside a block");
  }
  return b;
}

int block_fq(const RepPtr& node, std::uint64_t q) {
  switch (node->kind()) {
    case RepKind::Char: return node->chi.conductor_exponent(q);
    case RepKind::Twist:
    case RepKind::Contragredient: return block_fq(node->children[0], q);
    case RepKind::DirectSum: {
      int s = 0;
      for (const auto& c : node->children) s += block_fq(c, q);
      return s;
    }
    default: break;
  }
  const BlockLocalData d = local_rec(node, q);
  if (d.steps.empty()) return 0;
  const int g0 = d.steps.front().order;
  Rational f = 0;
  for (const auto& st : d.steps) {
    Rational w(st.order, g0);
    w.canonicalize();
    f += w * (d.dim - st.fixed_dim);
  }
  if (f.get_den() != 1) throw ValidationError("local data give a non-integral conductor exponent at " + std::to_string(q));
  return static_cast<int>(to_long(Integer(f.get_num())));
}

void ramified_rec(const RepPtr& node, std::set<std::uint64_t>& out) {
  switch (node->kind()) {
    case RepKind::Char:
      for (const auto& q : prime_divisors(I(node->chi.conductor()))) out.insert(to_u64(q));
      return;
    case RepKind::Opaque:
      for (const auto& [q, steps] : node->local_data)
        if (!steps.empty()) out.insert(q);
      return;
    default:
      for (const auto& c : node->children) ramified_rec(c, out);
  }
}

}  // namespace

std::vector<FrobInfBlock> frob_infinity(const RepPtr& rep) {
  std::vector<FrobInfBlock> out;
  for (const auto& b : blocks(rep)) out.push_back(finf(b));
  return out;
}

std::vector<std::vector<long>> inertia_exponents(const RepPtr& rep) {
  std::vector<std::vector<long>> out;
  for (const auto& b : blocks(rep)) out.push_back(inert(b));
  return out;
}

DetDecomposition det_decomposition(const RepPtr& rep) { return det_rec(rep); }

std::vector<BlockLocalData> ramification_data(const RepPtr& rep, std::uint64_t q) {
  if (q == rep->p()) throw DomainError("ramification data is for primes other than p");
  std::vector<BlockLocalData> out;
  for (const auto& b : blocks(rep)) out.push_back(local_rec(b, q));
  return out;
}

int conductor_exponent(const RepPtr& rep, std::uint64_t q) {
  if (q == rep->p()) throw DomainError("conductor exponent is for primes other than p");
  int f = 0;
  for (const auto& b : blocks(rep)) f += block_fq(b, q);
  return f;
}

std::vector<std::uint64_t> ramified_primes(const RepPtr& rep) {
  std::set<std::uint64_t> s;
  ramified_rec(rep, s);
  return {s.begin(), s.end()};
}

// ---- polynomial helpers -------------------------------------------------

FFPoly embed_poly(const FFPoly& f, const FiniteField::Ptr& target) {
  return map_coeffs(f, target->zero(), [&](const FFElem& c) { return embed(c, target); });
}

bool ff_poly_equal(const FFPoly& a, const FFPoly& b) {
  const auto F = common_field(poly_field(a), poly_field(b));
  return embed_poly(a, F) == embed_poly(b, F);
}

std::string format_ff_poly(const FFPoly& f, const std::string& var) {
  return format_poly(f, var, [](const FFElem& c) {
    const std::string s = c.to_string();
    return c.in_prime_field() ? s : "(" + s + ")";
  });
}

}  // namespace galhecke
