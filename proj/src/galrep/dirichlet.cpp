#include "galhecke/galrep/dirichlet.hpp"

#include <numeric>
#include <sstream>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/polyfactor.hpp"

namespace galhecke {

namespace {

std::uint64_t ipow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m) {
  const auto bz = xgcd(Integer(static_cast<unsigned long>(a % m)), Integer(static_cast<unsigned long>(m)));
  if (bz.g != 1) throw DomainError("not invertible");
  return to_u64(mod_floor(bz.u, Integer(static_cast<unsigned long>(m))));
}

std::uint64_t order_mod(std::uint64_t g, std::uint64_t m) {
  std::uint64_t x = g % m, k = 1;
  while (x != 1 % m) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * g) % m);
    ++k;
  }
  return k;
}

}  // namespace

std::vector<UnitGenerator> unit_generators(std::uint64_t N) {
  if (N == 0) throw DomainError("modulus must be positive");
  std::vector<UnitGenerator> out;
  for (const auto& [qz, e] : factor_integer(Integer(static_cast<unsigned long>(N)))) {
    const std::uint64_t q = to_u64(qz);
    const std::uint64_t qe = ipow_u(q, e), rest = N / qe;
    // CRT: x = g mod qe, x = 1 mod rest
    auto lift = [&](std::uint64_t g) {
      if (rest == 1) return g % qe;
      const std::uint64_t t = ((g + qe - 1 % qe) % qe) * mod_inv(rest % qe, qe) % qe;  // rest * t = g - 1 mod qe
      return (1 + rest * t) % N;
    };
    if (q == 2) {
      if (e >= 2) out.push_back({lift(qe - 1), 2});
      if (e >= 3) out.push_back({lift(5), qe / 4});
      continue;
    }
    const std::uint64_t phi = qe / q * (q - 1);
    for (std::uint64_t g = 2;; ++g) {
      if (g % q == 0) continue;
      if (order_mod(g, qe) == phi) {
        out.push_back({lift(g), phi});
        break;
      }
    }
  }
  return out;
}

DirichletChar DirichletChar::trivial(const FiniteField::Ptr& field, std::uint64_t N) {
  std::vector<FFElem> t(N, field->zero());
  for (std::uint64_t a = 0; a < N; ++a)
    if (std::gcd(a, N) == 1) t[a] = field->one();
  if (N == 1) t[0] = field->one();
  return DirichletChar(field, N, std::move(t));
}

DirichletChar DirichletChar::from_generators(const FiniteField::Ptr& field, std::uint64_t N, const std::vector<FFElem>& values) {
  const auto gens = unit_generators(N);
  if (values.size() != gens.size())
    throw ValidationError("character mod " + std::to_string(N) + " needs " + std::to_string(gens.size()) + " generator values");
  if (N % field->p() == 0) throw ValidationError("character modulus must be prime to p");
  std::vector<FFElem> vals;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const FFElem v = embed(values[i], field);
    if (!v.pow(Integer(static_cast<unsigned long>(gens[i].order))).is_one())
      throw ValidationError("generator value " + v.to_string() + " has order not dividing " + std::to_string(gens[i].order));
    vals.push_back(v);
  }
  std::vector<FFElem> t(N, field->zero());
  if (N == 1) {
    t[0] = field->one();
    return DirichletChar(field, N, std::move(t));
  }
  // walk all exponent tuples
  std::vector<std::uint64_t> ex(gens.size(), 0);
  for (;;) {
    std::uint64_t a = 1;
    FFElem v = field->one();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::uint64_t k = 0; k < ex[i]; ++k) a = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * gens[i].value) % N);
      v = v * vals[i].pow(Integer(static_cast<unsigned long>(ex[i])));
    }
    t[a] = v;
    std::size_t i = 0;
    while (i < gens.size() && ++ex[i] == gens[i].order) ex[i++] = 0;
    if (i == gens.size()) break;
  }
  return DirichletChar(field, N, std::move(t));
}

DirichletChar DirichletChar::quadratic(const FiniteField::Ptr& field, std::uint64_t q) {
  if (q < 3 || !is_probable_prime(Integer(static_cast<unsigned long>(q)))) throw DomainError("quadratic character needs an odd prime");
  return from_generators(field, q, {field->from_int(std::int64_t{-1})});
}

FFElem DirichletChar::operator()(const Integer& a) const {
  return table_[to_u64(mod_floor(a, Integer(static_cast<unsigned long>(N_))))];
}

int DirichletChar::parity() const {
  const FFElem v = (*this)(std::int64_t{-1});
  if (v.is_one()) return 1;
  if ((-v).is_one()) return -1;
  throw DomainError("chi(-1) is not +-1");
}

bool DirichletChar::is_trivial() const {
  for (std::uint64_t a = 0; a < N_; ++a)
    if (!table_[a].is_zero() && !table_[a].is_one()) return false;
  return true;
}

std::uint64_t DirichletChar::order() const {
  Integer o = 1;
  for (const auto& v : table_)
    if (!v.is_zero()) o = lcm(o, v.multiplicative_order());
  return to_u64(o);
}

std::uint64_t DirichletChar::conductor() const {
  std::uint64_t M = N_;
  for (const auto& [qz, e] : factor_integer(Integer(static_cast<unsigned long>(N_)))) {
    const std::uint64_t q = to_u64(qz);
    // strip q while chi stays trivial on {a = 1 mod M/q}
    for (int i = 0; i < e; ++i) {
      const std::uint64_t cand = M / q;
      bool ok = true;
      for (std::uint64_t a = 1; a < N_ && ok; a += cand)
        if (std::gcd(a, N_) == 1 && !table_[a].is_one()) ok = false;
      if (!ok) break;
      M = cand;
    }
  }
  return M;
}

int DirichletChar::conductor_exponent(std::uint64_t q) const {
  std::uint64_t c = conductor();
  int e = 0;
  while (c % q == 0) {
    c /= q;
    ++e;
  }
  return e;
}

DirichletChar DirichletChar::primitive() const {
  const std::uint64_t M = conductor();
  std::vector<FFElem> t(M, field_->zero());
  for (std::uint64_t a = 0; a < N_; ++a)
    if (std::gcd(a, N_) == 1) t[a % M] = table_[a];
  if (M == 1) t[0] = field_->one();
  return DirichletChar(field_, M, std::move(t));
}

DirichletChar DirichletChar::lift_to(std::uint64_t M) const {
  if (M % N_ != 0) throw DomainError("lift_to needs a multiple of the modulus");
  std::vector<FFElem> t(M, field_->zero());
  for (std::uint64_t a = 0; a < M; ++a)
    if (std::gcd(a, M) == 1) t[a] = table_[a % N_];
  if (M == 1) t[0] = field_->one();
  return DirichletChar(field_, M, std::move(t));
}

DirichletChar DirichletChar::to_field(const FiniteField::Ptr& target) const {
  std::vector<FFElem> t;
  t.reserve(table_.size());
  for (const auto& v : table_) t.push_back(embed(v, target));
  return DirichletChar(target, N_, std::move(t));
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
  const auto F = common_field(field_, o.field_);
  const std::uint64_t M = std::lcm(N_, o.N_);
  const DirichletChar a = lift_to(M).to_field(F), b = o.lift_to(M).to_field(F);
  std::vector<FFElem> t(M);
  for (std::uint64_t i = 0; i < M; ++i) t[i] = a.table_[i] * b.table_[i];
  return DirichletChar(F, M, std::move(t));
}

DirichletChar DirichletChar::inv() const {
  std::vector<FFElem> t = table_;
  for (auto& v : t)
    if (!v.is_zero()) v = v.inv();
  return DirichletChar(field_, N_, std::move(t));
}

DirichletChar DirichletChar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  std::vector<FFElem> t = table_;
  for (auto& v : t)
    if (!v.is_zero()) v = v.pow(Integer(e));
  return DirichletChar(field_, N_, std::move(t));
}

bool DirichletChar::same_primitive(const DirichletChar& o) const {
  const DirichletChar a = primitive(), b = o.primitive();
  if (a.N_ != b.N_) return false;
  const auto F = common_field(field_, o.field_);
  for (std::uint64_t i = 0; i < a.N_; ++i)
    if (embed(a.table_[i], F) != embed(b.table_[i], F)) return false;
  return true;
}

bool DirichletChar::operator==(const DirichletChar& o) const { return N_ == o.N_ && same_primitive(o); }

std::vector<FFElem> DirichletChar::generator_values() const {
  std::vector<FFElem> out;
  for (const auto& g : unit_generators(N_)) out.push_back(table_[g.value]);
  return out;
}

std::string DirichletChar::to_string() const {
  if (is_trivial()) return "trivial mod " + std::to_string(N_);
  std::ostringstream os;
  os << "chi mod " << N_ << " [";
  const auto gens = unit_generators(N_);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) os << "; ";
    os << gens[i].value << " -> " << table_[gens[i].value].to_string();
  }
  os << "] over " << field_->name();
  return os.str();
}

}  // namespace galhecke
