#include "galhecke/exactalg/zp.hpp"

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;
}

Zp::Zp(std::int64_t value, std::uint64_t modulus) : m_(modulus) {
  if (modulus == 0 || modulus > kMaxModulus) throw DomainError("Zp modulus out of range");
  const auto m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  v_ = static_cast<std::uint64_t>(r);
}

Zp::Zp(const Integer& value, std::uint64_t modulus) : m_(modulus) {
  if (modulus == 0 || modulus > kMaxModulus) throw DomainError("Zp modulus out of range");
  v_ = to_u64(mod_floor(value, Integer(static_cast<unsigned long>(modulus))));
}

Zp Zp::operator+(const Zp& o) const {
  Zp r;
  r.m_ = m_;
  r.v_ = v_ + o.v_;
  if (r.v_ >= m_) r.v_ -= m_;
  return r;
}

Zp Zp::operator-(const Zp& o) const {
  Zp r;
  r.m_ = m_;
  r.v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + m_ - o.v_;
  return r;
}

Zp Zp::operator*(const Zp& o) const {
  Zp r;
  r.m_ = m_;
  r.v_ = (v_ * o.v_) % m_;
  return r;
}

Zp Zp::inv() const {
  std::int64_t a = static_cast<std::int64_t>(v_), b = static_cast<std::int64_t>(m_);
  std::int64_t x0 = 1, x1 = 0;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (a != 1) throw DomainError("Zp: element " + std::to_string(v_) + " not invertible mod " + std::to_string(m_));
  return Zp(x0, m_);
}

Zp Zp::pow(const Integer& e) const {
  if (sgn(e) < 0) return inv().pow(-e);
  if (e.fits_ulong_p()) {
    Zp r;
    r.m_ = m_;
    r.v_ = powmod_u64(v_, e.get_ui(), m_);
    return r;
  }
  Integer r;
  const Integer base(static_cast<unsigned long>(v_)), mod(static_cast<unsigned long>(m_));
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return Zp(r, m_);
}

std::ostream& operator<<(std::ostream& os, const Zp& x) { return os << x.value(); }

}  // namespace galhecke
