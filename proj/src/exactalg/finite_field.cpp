#include "galhecke/exactalg/finite_field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

std::mutex g_cache_mutex;
std::map<std::pair<std::uint64_t, int>, FiniteField::Ptr>& cache() {
  static std::map<std::pair<std::uint64_t, int>, FiniteField::Ptr> c;
  return c;
}

// Digits of `index` in base p, most significant first, as coefficients c0..c_{k-1}.
std::vector<std::uint64_t> digits_c0_first(Integer index, std::uint64_t p, int k) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k), 0);
  const Integer P(static_cast<unsigned long>(p));
  for (int i = k - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = to_u64(mod_floor(index, P));
    index /= P;
  }
  return c;
}

std::vector<std::uint64_t> find_canonical_modulus(std::uint64_t p, int k) {
  if (k == 1) return {0, 1};
  const Integer total = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(k));
  const Integer start = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(k - 1));
  // c0 = 0 would make x a factor, so start at c0 = 1.
  for (Integer idx = start; idx < total; ++idx) {
    auto c = digits_c0_first(idx, p, k);
    std::vector<Zp> zc;
    for (auto v : c) zc.emplace_back(static_cast<std::int64_t>(v), p);
    zc.emplace_back(1, p);
    Poly<Zp> f(Zp(0, p), zc);
    if (is_irreducible_mod_p(f)) {
      c.push_back(1);
      return c;
    }
  }
  throw DomainError("no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(std::uint64_t p, int k, std::vector<std::uint64_t> modulus)
    : p_(p), k_(k), q_(ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(k))), mod_(std::move(modulus)) {}

FiniteField::Ptr FiniteField::get(std::uint64_t p, int k) {
  if (k < 1) throw DomainError("extension degree must be >= 1");
  if (p < 2 || p > (std::uint64_t{1} << 31) || !is_probable_prime(Integer(static_cast<unsigned long>(p))))
    throw DomainError("finite field characteristic must be a prime below 2^31");
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache().find({p, k});
    if (it != cache().end()) return it->second;
  }
  auto mod = find_canonical_modulus(p, k);
  FiniteField::Ptr field = std::make_shared<FiniteField>(p, k, std::move(mod));
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto [it, inserted] = cache().emplace(std::make_pair(p, k), field);
  return it->second;
}

Poly<Zp> FiniteField::modulus_poly() const {
  std::vector<Zp> c;
  for (auto v : mod_) c.emplace_back(static_cast<std::int64_t>(v), p_);
  return Poly<Zp>(Zp(0, p_), c);
}

FFElem FiniteField::zero() const {
  return FFElem(shared_from_this(), std::vector<std::uint64_t>(static_cast<std::size_t>(k_), 0));
}

FFElem FiniteField::one() const {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k_), 0);
  c[0] = 1 % p_;
  return FFElem(shared_from_this(), c);
}

FFElem FiniteField::from_int(const Integer& v) const {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k_), 0);
  c[0] = to_u64(mod_floor(v, Integer(static_cast<unsigned long>(p_))));
  return FFElem(shared_from_this(), c);
}

FFElem FiniteField::from_int(std::int64_t v) const { return from_int(Integer(static_cast<long>(v))); }

FFElem FiniteField::from_coeffs(std::vector<std::uint64_t> low_first) const {
  if (low_first.size() > static_cast<std::size_t>(k_)) {
    // Reduce a longer polynomial modulo the field modulus.
    std::vector<Zp> zc;
    for (auto v : low_first) zc.emplace_back(static_cast<std::int64_t>(v % p_), p_);
    const Poly<Zp> r = Poly<Zp>(Zp(0, p_), zc) % modulus_poly();
    low_first.assign(static_cast<std::size_t>(k_), 0);
    for (int i = 0; i <= r.degree(); ++i) low_first[static_cast<std::size_t>(i)] = r[i].value();
  }
  low_first.resize(static_cast<std::size_t>(k_), 0);
  for (auto& v : low_first) v %= p_;
  return FFElem(shared_from_this(), std::move(low_first));
}

FFElem FiniteField::gen_x() const {
  if (k_ == 1) return from_int(Integer(-static_cast<long>(mod_[0])));
  std::vector<std::uint64_t> c(static_cast<std::size_t>(k_), 0);
  c[1] = 1;
  return FFElem(shared_from_this(), c);
}

FFElem FiniteField::element_at(const Integer& index) const {
  return FFElem(shared_from_this(), digits_c0_first(index, p_, k_));
}

const std::vector<Integer>& FiniteField::order_minus_one_primes() const {
  std::call_once(primes_once_, [this] {
    std::vector<Integer> ps;
    const Integer P(static_cast<unsigned long>(p_));
    for (int d = 1; d <= k_; ++d) {
      if (k_ % d) continue;
      for (const auto& q : prime_divisors(cyclotomic_value(d, P))) ps.push_back(q);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    primes_ = std::move(ps);
  });
  return primes_;
}

FFElem FiniteField::generator() const {
  std::call_once(gen_once_, [this] {
    const auto& primes = order_minus_one_primes();
    const Integer qm1 = q_ - 1;
    for (Integer idx = 1; idx < q_; ++idx) {
      const FFElem g = element_at(idx);
      if (g.is_zero()) continue;
      bool full = true;
      for (const auto& r : primes) {
        if (g.pow(qm1 / r).is_one()) {
          full = false;
          break;
        }
      }
      if (full) {
        gen_ = g.coeffs();
        return;
      }
    }
    throw DomainError("no generator found");
  });
  return FFElem(shared_from_this(), gen_);
}

std::string FiniteField::name() const {
  std::ostringstream os;
  os << "F_" << p_;
  if (k_ > 1) os << "^" << k_;
  return os.str();
}

FFElem::FFElem(FiniteField::Ptr field, std::vector<std::uint64_t> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {}

void FFElem::check_same(const FFElem& o) const {
  if (!field_ || !o.field_) throw DomainError("uninitialized finite field element");
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw DomainError("finite field mismatch: " + field_->name() + " vs " + o.field_->name());
}

std::uint64_t FFElem::as_prime_field() const {
  if (!in_prime_field()) throw DomainError("element " + to_string() + " is not in the prime field");
  return c_[0];
}

bool FFElem::in_prime_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  return true;
}

FFElem FFElem::operator+(const FFElem& o) const {
  check_same(o);
  const std::uint64_t p = field_->p();
  std::vector<std::uint64_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    r[i] = c_[i] + o.c_[i];
    if (r[i] >= p) r[i] -= p;
  }
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& o) const {
  check_same(o);
  const std::uint64_t p = field_->p();
  std::vector<std::uint64_t> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i];
  return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-() const { return field_->zero() - *this; }

FFElem FFElem::operator*(const FFElem& o) const {
  check_same(o);
  const std::uint64_t p = field_->p();
  const std::size_t k = c_.size();
  if (k == 1) return FFElem(field_, {(c_[0] * o.c_[0]) % p});
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + c_[i] * o.c_[j]) % p;
  }
  const auto& m = field_->modulus();
  for (std::size_t d = prod.size() - 1; d >= k; --d) {
    const std::uint64_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t sub = (c * m[j]) % p;
      auto& slot = prod[d - k + j];
      slot = slot >= sub ? slot - sub : slot + p - sub;
    }
  }
  prod.resize(k);
  return FFElem(field_, std::move(prod));
}

bool FFElem::operator==(const FFElem& o) const {
  check_same(o);
  return c_ == o.c_;
}

bool FFElem::is_zero() const {
  for (auto v : c_)
    if (v) return false;
  return true;
}

bool FFElem::is_one() const {
  if (c_.empty() || c_[0] != 1 % field_->p()) return false;
  return in_prime_field();
}

FFElem FFElem::pow(const Integer& e) const {
  if (sgn(e) < 0) return inv().pow(-e);
  FFElem result = field_->one();
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

FFElem FFElem::inv() const {
  if (is_zero()) throw DomainError("inverse of zero in " + field_->name());
  if (c_.size() == 1) return FFElem(field_, {Zp(static_cast<std::int64_t>(c_[0]), field_->p()).inv().value()});
  return pow(field_->order() - 2);
}

Integer FFElem::multiplicative_order() const {
  if (is_zero()) throw DomainError("order of zero");
  Integer n = field_->order() - 1;
  for (const auto& r : field_->order_minus_one_primes()) {
    while (mpz_divisible_p(n.get_mpz_t(), r.get_mpz_t()) && pow(n / r).is_one()) n /= r;
  }
  return n;
}

std::string FFElem::to_string() const {
  if (!field_) return "<null>";
  if (c_.size() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i];
  }
  return os.str();
}

bool lex_less(const FFElem& a, const FFElem& b) { return a.coeffs() < b.coeffs(); }

std::ostream& operator<<(std::ostream& os, const FFElem& x) { return os << x.to_string(); }

bool ff_is_square(const FFElem& x) {
  if (x.is_zero()) return true;
  const Integer& q = x.field()->order();
  if (x.p() == 2) return true;
  return x.pow((q - 1) / 2).is_one();
}

FFElem ff_root_of_unity(const FiniteField::Ptr& field, const Integer& h) {
  const Integer qm1 = field->order() - 1;
  if (sgn(h) <= 0 || !mpz_divisible_p(qm1.get_mpz_t(), h.get_mpz_t()))
    throw DomainError(h.get_str() + " does not divide " + qm1.get_str());
  return field->generator().pow(qm1 / h);
}

bool is_irreducible_mod_p(const Poly<Zp>& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const std::uint64_t p = f.zero().modulus();
  const Poly<Zp> g = f.monic();
  const Poly<Zp> x = Poly<Zp>::x(f.zero());
  const Integer P(static_cast<unsigned long>(p));
  // x^{p^i} mod g for i = 0..n
  std::vector<Poly<Zp>> frob{x % g};
  for (int i = 1; i <= n; ++i) frob.push_back(powmod(frob.back(), P, g));
  if (frob[static_cast<std::size_t>(n)] != frob[0]) return false;
  for (const auto& r : prime_divisors(Integer(n))) {
    const int e = n / static_cast<int>(r.get_si());
    if (gcd(frob[static_cast<std::size_t>(e)] - x, g).degree() != 0) return false;
  }
  return true;
}

Poly<Zp> to_zp_poly(const IntPoly& f, std::uint64_t p) {
  return map_coeffs(f, Zp(0, p), [p](const Integer& c) { return Zp(c, p); });
}

IntPoly lift_zp_poly(const Poly<Zp>& f) {
  return map_coeffs(f, Integer(0), [](const Zp& c) { return Integer(static_cast<unsigned long>(c.value())); });
}

Integer cyclotomic_value(int d, const Integer& x) {
  // Phi_d(x) = prod_{e | d} (x^e - 1)^{mu(d/e)}
  auto mobius = [](int n) {
    int mu = 1;
    for (int q = 2; q * q <= n; ++q) {
      if (n % q) continue;
      n /= q;
      if (n % q == 0) return 0;
      mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  Integer num = 1, den = 1;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = mobius(d / e);
    const Integer term = ipow(x, static_cast<unsigned long>(e)) - 1;
    if (mu == 1) num *= term;
    else if (mu == -1) den *= term;
  }
  return num / den;
}

int mult_order_mod(std::uint64_t p, std::uint64_t h) {
  if (h == 1) return 1;
  if (std::__gcd(p % h, h) != 1) throw DomainError("order of non-unit modulo " + std::to_string(h));
  std::uint64_t v = p % h;
  int k = 1;
  while (v != 1) {
    v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) * p) % h);
    ++k;
  }
  return k;
}

FFElem parse_ff(const FiniteField::Ptr& field, const std::string& text) {
  std::vector<std::uint64_t> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const Integer v = parse_integer(part);
    c.push_back(to_u64(mod_floor(v, Integer(static_cast<unsigned long>(field->p())))));
  }
  if (c.empty() || c.size() > static_cast<std::size_t>(field->k()))
    throw ValidationError("bad field element '" + text + "' for " + field->name());
  return field->from_coeffs(std::move(c));
}

}  // namespace galhecke
