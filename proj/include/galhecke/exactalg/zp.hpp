#pragma once

#include <cstdint>
#include <ostream>

#include "galhecke/exactalg/integer.hpp"

namespace galhecke {

// Element of Z/m for a word-sized modulus m < 2^32 (products fit in 64 bits).
// Used for F_l arithmetic and for Z/l^e during Hensel lifting; inverse() is
// only meaningful for units.
class Zp {
 public:
  Zp() = default;
  Zp(std::int64_t value, std::uint64_t modulus);
  Zp(const Integer& value, std::uint64_t modulus);

  std::uint64_t value() const noexcept { return v_; }
  std::uint64_t modulus() const noexcept { return m_; }

  Zp operator+(const Zp& o) const;
  Zp operator-(const Zp& o) const;
  Zp operator*(const Zp& o) const;
  Zp operator/(const Zp& o) const { return *this * o.inv(); }
  Zp operator-() const { return Zp(0, m_) - *this; }
  Zp& operator+=(const Zp& o) { return *this = *this + o; }
  Zp& operator-=(const Zp& o) { return *this = *this - o; }
  Zp& operator*=(const Zp& o) { return *this = *this * o; }
  Zp& operator/=(const Zp& o) { return *this = *this / o; }

  bool operator==(const Zp& o) const { return v_ == o.v_ && m_ == o.m_; }
  bool operator!=(const Zp& o) const { return !(*this == o); }

  Zp inv() const;
  Zp pow(const Integer& e) const;

 private:
  std::uint64_t v_ = 0;
  std::uint64_t m_ = 1;
};

inline Zp zero_like(const Zp& x) { return Zp(0, x.modulus()); }
inline Zp one_like(const Zp& x) { return Zp(1, x.modulus()); }
inline bool is_zero(const Zp& x) { return x.value() == 0; }
inline Zp inverse(const Zp& x) { return x.inv(); }
inline bool lex_less(const Zp& a, const Zp& b) { return a.value() < b.value(); }

std::ostream& operator<<(std::ostream& os, const Zp& x);

}  // namespace galhecke
