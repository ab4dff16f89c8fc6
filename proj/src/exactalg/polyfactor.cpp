#include "galhecke/exactalg/polyfactor.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace galhecke {

std::uint64_t fnv1a(const std::vector<std::uint64_t>& words) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint64_t w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::vector<std::pair<ZpPoly, int>> factor_poly_mod_l(const IntPoly& f, std::uint64_t l) {
  if (!is_probable_prime(Integer(static_cast<unsigned long>(l)))) throw DomainError("modulus " + std::to_string(l) + " is not prime");
  const ZpPoly fl = to_zp_poly(f, l);
  if (fl.is_zero()) throw DomainError("polynomial vanishes mod " + std::to_string(l));
  return factor_over_field(fl);
}

namespace {

ZpPoly reduce_to(const IntPoly& f, std::uint64_t m) { return to_zp_poly(f, m); }

// Lift f = g*h (mod l, g and h monic and coprime) to mod l^e.
std::pair<IntPoly, IntPoly> lift_pair(const IntPoly& f, IntPoly g, IntPoly h, std::uint64_t l, int e) {
  const ZpPoly gl = reduce_to(g, l), hl = reduce_to(h, l);
  const auto bz = xgcd(gl, hl);
  if (bz.g.degree() != 0) throw DomainError("Hensel lifting needs coprime factors mod l");
  Integer lk = l;
  const Integer L(static_cast<unsigned long>(l));
  for (int k = 1; k < e; ++k) {
    const IntPoly diff = f - g * h;
    IntPoly scaled = map_coeffs(diff, Integer(0), [&](const Integer& c) {
      if (!mpz_divisible_p(c.get_mpz_t(), lk.get_mpz_t())) throw DomainError("Hensel invariant broken");
      return Integer(c / lk);
    });
    const ZpPoly err = reduce_to(scaled, l);
    // err = dg*h + dh*g with deg dg < deg g
    const auto [q, dg] = divmod(err * bz.t, gl);
    const ZpPoly dh = q * hl + err * bz.s;
    g = g + lift_zp_poly(dg) * Poly<Integer>::constant(lk);
    h = h + lift_zp_poly(dh) * Poly<Integer>::constant(lk);
    lk *= L;
    auto reduce = [&](const IntPoly& p) {
      return map_coeffs(p, Integer(0), [&](const Integer& c) { return mod_floor(c, lk); });
    };
    g = reduce(g);
    h = reduce(h);
  }
  return {g, h};
}

void lift_tree(const IntPoly& f, const std::vector<ZpPoly>& facs, std::size_t lo, std::size_t hi, std::uint64_t l, int e,
               std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = f;
    return;
  }
  const std::size_t mid = (lo + hi) / 2;
  ZpPoly gl = ZpPoly::constant(Zp(1, l)), hl = ZpPoly::constant(Zp(1, l));
  for (std::size_t i = lo; i < mid; ++i) gl = gl * facs[i];
  for (std::size_t i = mid; i < hi; ++i) hl = hl * facs[i];
  auto [g, h] = lift_pair(f, lift_zp_poly(gl), lift_zp_poly(hl), l, e);
  lift_tree(g, facs, lo, mid, l, e, out);
  lift_tree(h, facs, mid, hi, l, e, out);
}

}  // namespace

std::vector<ZpPoly> hensel_lift_factors(const IntPoly& f, std::uint64_t l, int e) {
  if (e < 1) throw DomainError("Hensel exponent must be >= 1");
  const Integer mod = ipow(Integer(static_cast<unsigned long>(l)), static_cast<unsigned long>(e));
  if (mod > Integer(4294967295UL)) throw DomainError("l^e too large for word arithmetic");
  const std::uint64_t m = to_u64(mod);
  const auto facs = factor_poly_mod_l(f, l);
  std::vector<ZpPoly> base;
  for (const auto& [g, mult] : facs) {
    if (mult != 1) throw DomainError("polynomial is not squarefree mod " + std::to_string(l));
    base.push_back(g);
  }
  if (base.empty()) return {};
  // Normalize f to be monic modulo l^e.
  const Zp lc(f.lead(), m);
  if (std::gcd(lc.value(), l) != 1) throw DomainError("leading coefficient divisible by l");
  const Zp lci = lc.inv();
  const IntPoly fm = map_coeffs(f, Integer(0), [&](const Integer& c) {
    return Integer(static_cast<unsigned long>((Zp(c, m) * lci).value()));
  });
  std::vector<IntPoly> lifted(base.size());
  lift_tree(fm, base, 0, base.size(), l, e, lifted);
  std::vector<ZpPoly> out;
  for (const auto& g : lifted) out.push_back(reduce_to(g, m));
  return out;
}

FFPoly to_ff_poly(const IntPoly& f, const FiniteField::Ptr& field) {
  return map_coeffs(f, field->zero(), [&](const Integer& c) { return field->from_int(c); });
}

FFElem embedding_image(const FiniteField::Ptr& source, const FiniteField::Ptr& target) {
  if (source->p() != target->p() || target->k() % source->k() != 0)
    throw DomainError("cannot embed " + source->name() + " into " + target->name());
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, int>, std::vector<std::uint64_t>> memo;
  const auto key = std::make_tuple(source->p(), source->k(), target->k());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return target->from_coeffs(it->second);
  }
  FFElem image = target->zero();
  if (source->k() == 1) {
    image = target->from_int(Integer(0));
  } else {
    std::vector<FFElem> mc;
    for (auto v : source->modulus()) mc.push_back(target->from_int(Integer(static_cast<unsigned long>(v))));
    const auto roots = roots_in_field(FFPoly(target->zero(), mc));
    if (roots.empty()) throw DomainError("modulus has no root in target field");
    image = roots.front();
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, image.coeffs());
  return image;
}

FFElem embed(const FFElem& x, const FiniteField::Ptr& target) {
  const auto& src = x.field();
  if (src == target || *src == *target) return x;
  if (src->k() == 1) return target->from_int(Integer(static_cast<unsigned long>(x.coeffs()[0])));
  const FFElem a = embedding_image(src, target);
  FFElem acc = target->zero();
  const auto& c = x.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * a + target->from_int(Integer(static_cast<unsigned long>(c[i])));
  return acc;
}

FiniteField::Ptr common_field(const FiniteField::Ptr& a, const FiniteField::Ptr& b) {
  if (a->p() != b->p()) throw DomainError("fields of different characteristic");
  return FiniteField::get(a->p(), std::lcm(a->k(), b->k()));
}

}  // namespace galhecke
