#include "galhecke/numfield/relative.hpp"

#include <cctype>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [k, c] : o.terms) {
    r.terms[k] += c;
    if (r.terms[k] == 0) r.terms.erase(k);
  }
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
  BiPoly neg;
  for (const auto& [k, c] : o.terms) neg.terms[k] = -c;
  return *this + neg;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [k1, c1] : terms)
    for (const auto& [k2, c2] : o.terms) {
      const std::pair<int, int> k{k1.first + k2.first, k1.second + k2.second};
      r.terms[k] += c1 * c2;
      if (r.terms[k] == 0) r.terms.erase(k);
    }
  return r;
}

std::string BiPoly::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    const bool neg = c < 0;
    const Integer mag = abs(c);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    const bool bare = k.first == 0 && k.second == 0;
    if (mag != 1 || bare) os << mag;
    auto sym = [&](char v, int e) {
      if (e == 0) return;
      os << v;
      if (e > 1) os << '^' << e;
    };
    sym('a', k.first);
    sym('b', k.second);
  }
  return os.str();
}

namespace {

// Accept the usual typeset variants: unicode minus and superscript digits.
std::string normalize(const std::string& in) {
  std::string out;
  for (std::size_t i = 0; i < in.size();) {
    const unsigned char ch = static_cast<unsigned char>(in[i]);
    if (ch == 0xE2 && i + 2 < in.size() && static_cast<unsigned char>(in[i + 1]) == 0x88 &&
        static_cast<unsigned char>(in[i + 2]) == 0x92) {
      out += '-';
      i += 3;
    } else if (ch == 0xC2 && i + 1 < in.size() &&
               (static_cast<unsigned char>(in[i + 1]) == 0xB2 || static_cast<unsigned char>(in[i + 1]) == 0xB3)) {
      out += static_cast<unsigned char>(in[i + 1]) == 0xB2 ? "^2" : "^3";
      i += 2;
    } else {
      out += in[i];
      ++i;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string s) : s_(std::move(s)) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("gexpr parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  BiPoly expr() {
    BiPoly r;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      BiPoly t = term();
      r = sign > 0 ? r + t : r - t;
      first = false;
    }
    return r;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == 'b' || c == '(';
  }

  BiPoly term() {
    BiPoly r = factor();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        r = r * factor();
      } else if (starts_factor()) {
        r = r * factor();
      } else {
        break;
      }
    }
    return r;
  }

  BiPoly factor() {
    BiPoly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      const int e = std::stoi(s_.substr(start, pos_ - start));
      BiPoly r;
      r.terms[{0, 0}] = 1;
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  BiPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    BiPoly r;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const Integer v(s_.substr(start, pos_ - start));
      if (v != 0) r.terms[{0, 0}] = v;
      return r;
    }
    if (c == 'a' || c == 'b') {
      ++pos_;
      r.terms[c == 'a' ? std::make_pair(1, 0) : std::make_pair(0, 1)] = 1;
      return r;
    }
    if (c == '(') {
      ++pos_;
      r = expr();
      if (!peek(')')) fail("')' expected");
      ++pos_;
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_bipoly(const std::string& text) {
  const std::string s = normalize(text);
  if (s.find_first_not_of(" \t") == std::string::npos) throw ValidationError("empty gexpr");
  return Parser(s).parse();
}

RelElem::RelElem(NumberField::Ptr base, Matrix<NFElem> mat) : base_(std::move(base)), mat_(std::move(mat)) {}

Matrix<NFElem> RelElem::companion_b(const NumberField::Ptr& base) {
  const int n = base->degree();
  if (n < 2) throw DomainError("relative extension needs deg f >= 2");
  // h(x) = f(x)/(x - a) by synthetic division, h monic of degree n-1.
  const NFElem a = base->gen();
  std::vector<NFElem> h(static_cast<std::size_t>(n), base->zero());
  h[static_cast<std::size_t>(n - 1)] = base->one();
  for (int i = n - 2; i >= 0; --i)
    h[static_cast<std::size_t>(i)] = base->from_rational(Rational(base->poly()[i + 1])) + a * h[static_cast<std::size_t>(i + 1)];
  const std::size_t m = static_cast<std::size_t>(n - 1);
  Matrix<NFElem> b(m, m, base->zero());
  for (std::size_t i = 0; i + 1 < m; ++i) b(i, i + 1) = base->one();
  for (std::size_t j = 0; j < m; ++j) b(m - 1, j) = -h[j];
  return b;
}

RelElem RelElem::from_bipoly(const NumberField::Ptr& base, const BiPoly& g) {
  const Matrix<NFElem> b = companion_b(base);
  const std::size_t m = b.rows();
  const NFElem a = base->gen();
  int max_j = 0;
  for (const auto& [k, c] : g.terms) max_j = std::max(max_j, k.second);
  std::vector<Matrix<NFElem>> bpow{Matrix<NFElem>::identity(m, base->zero())};
  for (int j = 1; j <= max_j; ++j) bpow.push_back(bpow.back() * b);
  Matrix<NFElem> acc(m, m, base->zero());
  for (const auto& [k, c] : g.terms) {
    const NFElem coef = a.pow(k.first) * Rational(c);
    acc = acc + bpow[static_cast<std::size_t>(k.second)] * coef;
  }
  return RelElem(base, acc);
}

NFElem RelElem::norm() const { return determinant(mat_); }

NFElem rel_norm(const BiPoly& g, const NumberField::Ptr& field) { return RelElem::from_bipoly(field, g).norm(); }

NFElem rel_norm(const std::string& gexpr, const NumberField::Ptr& field) { return rel_norm(parse_bipoly(gexpr), field); }

}  // namespace galhecke
