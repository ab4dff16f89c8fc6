#include "galhecke/serre/serre.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

long mod_m(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

long pm1(std::uint64_t p) { return static_cast<long>(p) - 1; }

std::string join(const std::vector<long>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

}  // namespace

Integer GoodTuple::g() const {
  Integer g = 0, pk = 1;
  for (long x : b) {
    g += pk * x;
    pk *= static_cast<unsigned long>(p);
  }
  return g;
}

std::string GoodTuple::to_string() const { return "F(" + join(b) + ")"; }

bool GoodTuple::operator<(const GoodTuple& o) const {
  const Integer a = g(), c = o.g();
  if (a != c) return a < c;
  return b < o.b;
}

bool is_good(const std::vector<long>& b, std::uint64_t p) {
  if (b.empty()) return false;
  const long m = pm1(p);
  for (std::size_t i = 0; i + 1 < b.size(); ++i)
    if (b[i] - b[i + 1] < 0 || b[i] - b[i + 1] > m) return false;
  return b.back() >= 0 && b.back() <= m - 1;
}

std::vector<GoodTuple> good_normalize(const std::vector<long>& a, std::uint64_t p) {
  if (a.empty()) throw DomainError("good_normalize needs n >= 1");
  if (p < 3 || p % 2 == 0) throw DomainError("good_normalize needs an odd prime");
  const long m = pm1(p);
  const std::size_t n = a.size();
  std::vector<std::vector<long>> acc{{mod_m(a[n - 1], m)}};  // built from the right
  for (std::size_t i = n - 1; i-- > 0;) {
    const long d = mod_m(a[i] - a[i + 1], m);
    std::vector<std::vector<long>> next;
    for (const auto& tail : acc) {
      for (long step : d == 0 ? std::vector<long>{0, m} : std::vector<long>{d}) {
        auto t = tail;
        t.insert(t.begin(), tail.front() + step);
        next.push_back(std::move(t));
      }
    }
    acc = std::move(next);
  }
  std::vector<GoodTuple> out;
  for (auto& b : acc) out.push_back({std::move(b), p});
  std::sort(out.begin(), out.end());
  return out;
}

GoodTuple twist_tuple(const GoodTuple& t) {
  if (!is_good(t.b, t.p)) throw DomainError("twist_tuple needs a good tuple");
  GoodTuple r = t;
  const long shift = t.b.back() == pm1(t.p) - 1 ? -(static_cast<long>(t.p) - 2) : 1;
  for (auto& x : r.b) x += shift;
  return r;
}

std::vector<GoodTuple> twist_weight(const std::vector<GoodTuple>& ts) {
  std::vector<GoodTuple> out;
  for (const auto& t : ts) out.push_back(twist_tuple(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_arrangement(const Arrangement& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t b = 0; b < a.size(); ++b) {
    os << (b ? "," : "") << '{';
    for (std::size_t i = 0; i < a[b].size(); ++i) os << (i ? "," : "") << a[b][i] + 1;
    os << '}';
  }
  os << ']';
  return os.str();
}

// ---- strict parity -------------------------------------------------------

namespace {

int required_sign(int s, int pos) { return pos % 2 == 0 ? s : -s; }

ArrangementCheck check_arrangement(const std::vector<FrobInfBlock>& fi, const Arrangement& arr) {
  ArrangementCheck c;
  c.arrangement = arr;
  std::string first_reason;
  for (int s : {1, -1}) {
    bool ok = true;
    for (std::size_t b = 0; b < fi.size() && ok; ++b) {
      const auto ev = fi[b].eigenvalues();
      for (std::size_t i = 0; i < arr[b].size(); ++i) {
        if (ev[i] != required_sign(s, arr[b][i])) {
          ok = false;
          if (first_reason.empty()) {
            std::ostringstream os;
            os << "block " << b + 1 << " (Frob_inf ";
            if (fi[b].scalar) os << (fi[b].sign > 0 ? "+1" : "-1");
            else os << "non-scalar";
            os << ") cannot sit at positions {";
            for (std::size_t k = 0; k < arr[b].size(); ++k) os << (k ? "," : "") << arr[b][k] + 1;
            os << "} of +-diag(1,-1,1,...)";
            first_reason = os.str();
          }
          break;
        }
      }
    }
    if (ok) {
      c.accepted = true;
      c.sign = s;
      return c;
    }
  }
  c.reason = first_reason;
  return c;
}

std::vector<Arrangement> all_arrangements(const std::vector<FrobInfBlock>& fi, int n) {
  std::vector<Arrangement> out;
  Arrangement cur(fi.size());
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t b, std::size_t i) {
    if (b == fi.size()) {
      out.push_back(cur);
      return;
    }
    if (i == static_cast<std::size_t>(fi[b].dim)) {
      rec(b + 1, 0);
      return;
    }
    for (int pos = 0; pos < n; ++pos) {
      if (used[static_cast<std::size_t>(pos)]) continue;
      used[static_cast<std::size_t>(pos)] = true;
      cur[b].push_back(pos);
      rec(b, i + 1);
      cur[b].pop_back();
      used[static_cast<std::size_t>(pos)] = false;
    }
  };
  rec(0, 0);
  return out;
}

// Level-1 reps built from two characters with inertia exponents {0, 1} are 1 + omega.
bool is_one_plus_omega(const RepPtr& rep) {
  const auto ex = inertia_exponents(rep);
  if (ex.size() != 2) return false;
  std::multiset<long> e;
  for (const auto& b : ex) {
    if (b.size() != 1) return false;
    e.insert(b[0]);
  }
  return e == std::multiset<long>{0, 1};
}

}  // namespace

std::vector<Arrangement> ParityReport::accepted() const {
  std::vector<Arrangement> out;
  for (const auto& a : arrangements)
    if (a.accepted) out.push_back(a.arrangement);
  return out;
}

ParityReport strict_parity(const RepPtr& rep) {
  const int n = rep->dim();
  if (n > 6) throw UnsupportedError("arrangement enumeration is limited to n <= 6");
  const auto fi = frob_infinity(rep);
  ParityReport r;
  for (const auto& b : fi) {
    const auto ev = b.eigenvalues();
    r.eigenvalues.insert(r.eigenvalues.end(), ev.begin(), ev.end());
  }
  std::multiset<int> have(r.eigenvalues.begin(), r.eigenvalues.end());
  for (int s : {1, -1}) {
    std::multiset<int> want;
    for (int i = 0; i < n; ++i) want.insert(required_sign(s, i));
    if (want == have) r.global_ok = true;
  }
  for (const auto& arr : all_arrangements(fi, n)) r.arrangements.push_back(check_arrangement(fi, arr));
  return r;
}

// ---- level, nebentype, weight ---------------------------------------------

Integer predicted_level(const RepPtr& rep) {
  Integer N = 1;
  for (std::uint64_t q : ramified_primes(rep)) {
    const int f = conductor_exponent(rep, q);
    N *= ipow(Integer(static_cast<unsigned long>(q)), static_cast<unsigned long>(f));
  }
  return N;
}

DirichletChar predicted_nebentype(const RepPtr& rep) { return det_decomposition(rep).eps.primitive(); }

WeightPrediction predicted_weight(const RepPtr& rep, const Arrangement& arrangement) {
  const int n = rep->dim();
  const auto fi = frob_infinity(rep);
  if (arrangement.size() != fi.size()) throw DomainError("arrangement does not match the block structure");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t b = 0; b < fi.size(); ++b) {
    if (arrangement[b].size() != static_cast<std::size_t>(fi[b].dim)) throw DomainError("arrangement block size mismatch");
    for (int pos : arrangement[b]) {
      if (pos < 0 || pos >= n || seen[static_cast<std::size_t>(pos)]) throw DomainError("arrangement is not a partition");
      seen[static_cast<std::size_t>(pos)] = true;
    }
  }
  const auto chk = check_arrangement(fi, arrangement);
  if (!chk.accepted) throw DomainError("arrangement " + format_arrangement(arrangement) + " rejected by strict parity: " + chk.reason);
  const auto ex = inertia_exponents(rep);
  WeightPrediction w;
  w.arrangement = arrangement;
  w.exponents.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t b = 0; b < arrangement.size(); ++b)
    for (std::size_t i = 0; i < arrangement[b].size(); ++i) w.exponents[static_cast<std::size_t>(arrangement[b][i])] = ex[b][i];
  for (int i = 0; i < n; ++i) w.shifted.push_back(w.exponents[static_cast<std::size_t>(i)] - (n - 1 - i));
  w.tuples = good_normalize(w.shifted, rep->p());
  w.eps = predicted_nebentype(rep);
  if (n == 2 && is_one_plus_omega(rep) && predicted_level(rep) == 1) {
    for (std::size_t i = 0; i < w.tuples.size(); ++i) {
      if (w.tuples[i].g() == static_cast<unsigned long>(rep->p() - 1)) {
        w.chosen = i;
        w.note = "level 1 and rho = 1 + omega: weight raised to p + 1";
      }
    }
  }
  return w;
}

const WeightPrediction& Prediction::best() const {
  if (weights.empty()) throw DomainError("no arrangement satisfies strict parity");
  return weights.front();
}

Prediction predict(const RepPtr& rep) {
  Prediction pr;
  pr.p = rep->p();
  pr.n = rep->dim();
  pr.level = predicted_level(rep);
  pr.eps = predicted_nebentype(rep);
  pr.parity = strict_parity(rep);
  std::set<std::vector<long>> seen;
  for (const auto& arr : pr.parity.accepted()) {
    auto w = predicted_weight(rep, arr);
    if (!seen.insert(w.exponents).second) continue;
    pr.weights.push_back(std::move(w));
  }
  std::stable_sort(pr.weights.begin(), pr.weights.end(),
                   [](const WeightPrediction& a, const WeightPrediction& b) { return a.best().g() < b.best().g(); });
  return pr;
}

std::vector<ExponentChoice> choose_exponents(const RepPtr& sigma) {
  if (sigma->dim() != 2) throw DomainError("choose_exponents needs a 2-dimensional sigma");
  const auto fi = frob_infinity(sigma);
  if (fi.size() != 1 || !fi[0].scalar) throw DomainError("choose_exponents needs sigma(Frob_inf) central");
  const int s = fi[0].sign;
  const auto ex = inertia_exponents(sigma)[0];
  const std::uint64_t p = sigma->p();
  const long m = pm1(p);
  std::vector<long> js;
  for (long e : ex) {
    long j = mod_m(-e, m);
    if (j > m / 2) j -= m;
    if (std::find_if(js.begin(), js.end(), [&](long x) { return mod_m(x - j, m) == 0; }) == js.end()) js.push_back(j);
  }
  std::vector<ExponentChoice> out;
  for (long j : js) {
    for (long k : {1L, 2L}) {
      const int block_sign = (mod_m(j, 2) == 0) ? s : -s;
      const int char_sign = k % 2 ? -1 : 1;
      if (block_sign == char_sign) continue;
      const RepPtr rho = GaloisRep::direct_sum({GaloisRep::twist(sigma, j), GaloisRep::omega_power(p, k)});
      const Prediction pr = predict(rho);
      for (const auto& w : pr.weights) out.push_back({j, k, w.exponents, w.best().g(), rho, w.arrangement});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ExponentChoice& a, const ExponentChoice& b) { return a.g < b.g; });
  return out;
}

DualInvariants dual_invariants(const RepPtr& rep, const WeightPrediction& w) {
  DualInvariants d;
  d.level = predicted_level(rep);
  d.eps = predicted_nebentype(rep).inv();
  std::vector<long> neg;
  for (auto it = w.best().b.rbegin(); it != w.best().b.rend(); ++it) neg.push_back(-*it);
  d.tuples = good_normalize(neg, rep->p());
  return d;
}

std::string format_prediction(const Prediction& pr) {
  std::ostringstream os;
  os << "p " << pr.p << "  n " << pr.n << '\n';
  os << "level " << pr.level << '\n';
  os << "nebentype " << (pr.eps.is_trivial() ? std::string("trivial") : pr.eps.to_string()) << '\n';
  os << "Frob_inf eigenvalues (";
  for (std::size_t i = 0; i < pr.parity.eigenvalues.size(); ++i) os << (i ? ", " : "") << pr.parity.eigenvalues[i];
  os << ")  global parity " << (pr.parity.global_ok ? "ok" : "FAILS") << '\n';
  os << "arrangements\n";
  for (const auto& a : pr.parity.arrangements) {
    os << "  " << format_arrangement(a.arrangement) << "  ";
    if (a.accepted) os << "accepted (sign " << (a.sign > 0 ? "+" : "-") << ")";
    else os << "rejected: " << a.reason;
    os << '\n';
  }
  os << "weights\n";
  for (std::size_t k = 0; k < pr.weights.size(); ++k) {
    const auto& w = pr.weights[k];
    os << "  " << format_arrangement(w.arrangement) << "  a = (" << join(w.exponents) << ")  tuples";
    for (std::size_t i = 0; i < w.tuples.size(); ++i)
      os << ' ' << w.tuples[i].to_string() << " g=" << w.tuples[i].g() << (i == w.chosen ? "*" : "");
    if (!w.note.empty()) os << "  [" << w.note << "]";
    os << '\n';
  }
  if (!pr.weights.empty()) os << "predicted " << pr.best().best().to_string() << " g = " << pr.best().best().g() << '\n';
  return os.str();
}

}  // namespace galhecke
