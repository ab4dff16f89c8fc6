#include "galhecke/gl2/gl2.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

long long md(long long v, long long m) {
  const long long r = v % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mdp(long long v, std::uint64_t p) { return static_cast<std::uint64_t>(md(v, static_cast<long long>(p))); }

// x, y with a x + b y = gcd(a, b) >= 0
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  long long x1, y1;
  const long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Floor division for b > 0.
long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b) != 0 && (a < 0)) --q;
  return q;
}

Integer I(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

bool is_prime_u(std::uint64_t v) { return v >= 2 && is_probable_prime(I(v)); }

std::vector<std::uint64_t> primes_upto(std::uint64_t bound, std::uint64_t avoid) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = 2; l <= bound; ++l)
    if (is_prime_u(l) && avoid % l != 0) out.push_back(l);
  return out;
}

std::vector<std::vector<std::uint64_t>> binomials(int n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> C(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    C[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j)
      C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] + C[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]) % p;
  }
  return C;
}

// (u X + v Y)^e as coefficients of X^j Y^(e-j)
std::vector<std::uint64_t> linear_power(std::uint64_t u, std::uint64_t v, int e, std::uint64_t p,
                                        const std::vector<std::vector<std::uint64_t>>& C) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(e + 1), 0);
  std::vector<std::uint64_t> up(static_cast<std::size_t>(e + 1), 1), vp(static_cast<std::size_t>(e + 1), 1);
  for (int j = 1; j <= e; ++j) {
    up[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(up[static_cast<std::size_t>(j - 1)]) * u) % p);
    vp[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(vp[static_cast<std::size_t>(j - 1)]) * v) % p);
  }
  for (int j = 0; j <= e; ++j) {
    unsigned __int128 t = C[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)];
    t = t * up[static_cast<std::size_t>(j)] % p;
    t = t * vp[static_cast<std::size_t>(e - j)] % p;
    out[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(t);
  }
  return out;
}

// Lift (c, d) mod N with gcd(c, d, N) = 1 to a matrix in SL2(Z).
Mat2 lift_to_sl2(long long c, long long d, long long N) {
  if (N == 1) return Mat2{};
  c = md(c, N);
  d = md(d, N);
  long long C = c == 0 ? N : c;
  long long D = d;
  for (long long t = 0;; ++t) {
    if (std::gcd(C, D + t * N) == 1) {
      D += t * N;
      break;
    }
    if (t > 100000) throw DomainError("lift_to_sl2: no coprime lift found");
  }
  long long x, y;
  ext_gcd(D, C, x, y);  // x D + y C = 1
  // [[x, -y], [C, D]] has det x D + y C = 1
  return Mat2{x, -y, C, D};
}

}  // namespace

std::vector<std::uint64_t> sym_act(const Mat2& gm, const std::vector<std::uint64_t>& P, std::uint64_t p) {
  const int g = static_cast<int>(P.size()) - 1;
  static thread_local std::map<std::pair<int, std::uint64_t>, std::vector<std::vector<std::uint64_t>>> binom_cache;
  auto& C = binom_cache[{g, p}];
  if (C.empty()) C = binomials(std::max(g, 0), p);
  std::vector<std::uint64_t> out(P.size(), 0);
  // X -> d X - b Y, Y -> -c X + a Y
  const std::uint64_t u1 = mdp(gm.d, p), v1 = mdp(-gm.b, p), u2 = mdp(-gm.c, p), v2 = mdp(gm.a, p);
  std::vector<std::vector<std::uint64_t>> pow1(static_cast<std::size_t>(g + 1)), pow2(static_cast<std::size_t>(g + 1));
  for (int e = 0; e <= g; ++e) {
    pow1[static_cast<std::size_t>(e)] = linear_power(u1, v1, e, p, C);
    pow2[static_cast<std::size_t>(e)] = linear_power(u2, v2, e, p, C);
  }
  for (int i = 0; i <= g; ++i) {
    const std::uint64_t coef = P[static_cast<std::size_t>(i)] % p;
    if (coef == 0) continue;
    const auto& A = pow1[static_cast<std::size_t>(i)];      // (dX - bY)^i
    const auto& B = pow2[static_cast<std::size_t>(g - i)];  // (-cX + aY)^(g-i)
    for (int j = 0; j <= i; ++j) {
      if (A[static_cast<std::size_t>(j)] == 0) continue;
      const unsigned __int128 cj = static_cast<unsigned __int128>(coef) * A[static_cast<std::size_t>(j)] % p;
      for (int k = 0; k <= g - i; ++k) {
        if (B[static_cast<std::size_t>(k)] == 0) continue;
        auto& o = out[static_cast<std::size_t>(j + k)];
        o = static_cast<std::uint64_t>((o + cj * B[static_cast<std::size_t>(k)]) % p);
      }
    }
  }
  return out;
}

// ---- the space -----------------------------------------------------------

void ManinSpace::add_symbol(Sparse& v, const std::vector<std::uint64_t>& P, long long c, long long d, const FFElem& scale) const {
  const long long N = static_cast<long long>(N_);
  const std::size_t pair = static_cast<std::size_t>(md(c, N) * N + md(d, N));
  const std::size_t r = pair_rep_[pair];
  if (r == npos) throw DomainError("Manin symbol with non-primitive pair");
  const FFElem s = scale * pair_scale_[pair];
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (P[i] == 0) continue;
    const std::size_t col = r * static_cast<std::size_t>(g_ + 1) + i;
    const FFElem t = s * field_->from_int(static_cast<std::int64_t>(P[i]));
    auto it = v.find(col);
    if (it == v.end()) {
      if (!t.is_zero()) v.emplace(col, t);
    } else {
      it->second += t;
      if (it->second.is_zero()) v.erase(it);
    }
  }
}

void ManinSpace::add_relation(Sparse v) {
  auto it = v.begin();
  while (it != v.end()) {
    const auto pr = pivot_rows_.find(it->first);
    if (pr == pivot_rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t c = it->first;
    const FFElem f = it->second;
    for (const auto& [col, w] : pr->second) {
      auto jt = v.find(col);
      const FFElem t = f * w;
      if (jt == v.end()) {
        v.emplace(col, -t);
      } else {
        jt->second -= t;
        if (jt->second.is_zero()) v.erase(jt);
      }
    }
    it = v.lower_bound(c);
  }
  if (v.empty()) return;
  const FFElem inv = v.begin()->second.inv();
  std::vector<std::pair<std::size_t, FFElem>> row;
  for (const auto& [col, w] : v) row.emplace_back(col, w * inv);
  pivot_rows_.emplace(v.begin()->first, std::move(row));
}

void ManinSpace::finish() {
  // back substitution: every pivot row only touches free columns besides its lead
  for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
    Sparse v(it->second.begin(), it->second.end());
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto jt = std::next(v.begin()); jt != v.end(); ++jt) {
        const auto pr = pivot_rows_.find(jt->first);
        if (pr == pivot_rows_.end()) continue;
        const FFElem f = jt->second;
        for (const auto& [col, w] : pr->second) {
          auto kt = v.find(col);
          const FFElem t = f * w;
          if (kt == v.end()) v.emplace(col, -t);
          else {
            kt->second -= t;
            if (kt->second.is_zero()) v.erase(kt);
          }
        }
        changed = true;
        break;
      }
    }
    it->second.assign(v.begin(), v.end());
  }
  col_to_basis_.assign(free_dim(), npos);
  for (std::size_t col = 0; col < free_dim(); ++col) {
    if (pivot_rows_.count(col)) continue;
    col_to_basis_[col] = basis_cols_.size();
    basis_cols_.push_back(col);
  }
}

std::vector<FFElem> ManinSpace::reduce(const Sparse& v) const {
  std::vector<FFElem> out(dim(), field_->zero());
  for (const auto& [col, val] : v) {
    const std::size_t q = col_to_basis_[col];
    if (q != npos) {
      out[q] += val;
      continue;
    }
    const auto& row = pivot_rows_.at(col);
    for (std::size_t k = 1; k < row.size(); ++k) out[col_to_basis_[row[k].first]] -= val * row[k].second;
  }
  return out;
}

std::vector<FFElem> ManinSpace::manin_symbol(const std::vector<std::uint64_t>& P, long long c, long long d) const {
  if (P.size() != static_cast<std::size_t>(g_ + 1)) throw DomainError("polynomial degree does not match g");
  Sparse v;
  add_symbol(v, P, c, d, field_->one());
  return reduce(v);
}

std::vector<FFElem> ManinSpace::modular_symbol(const std::vector<std::uint64_t>& P, long long na, long long da, long long nb,
                                               long long db) const {
  if (P.size() != static_cast<std::size_t>(g_ + 1)) throw DomainError("polynomial degree does not match g");
  Sparse v;
  // Q{0, r} = sum over convergents of h_k((h_k^-1 Q){0, oo})
  auto zero_to = [&](long long num, long long den, const FFElem& sign) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;  // p_{k-2}/q_{k-2}, p_{k-1}/q_{k-1}
    // k = -1 term: {0, oo}
    add_symbol(v, P, 0, 1, sign);
    if (den == 0) return;
    long long a = num, b = den;
    int k = 0;
    while (true) {
      const long long q = floor_div(a, b);
      const long long pk = q * pm1 + pm2, qk = q * qm1 + qm2;
      const long long s = (k % 2 == 0) ? -1 : 1;  // (-1)^(k-1)
      const Mat2 h{s * pk, pm1, s * qk, qm1};
      const Mat2 hinv{h.d, -h.b, -h.c, h.a};
      add_symbol(v, sym_act(hinv, P, p_), h.c, h.d, sign);
      pm2 = pm1;
      qm2 = qm1;
      pm1 = pk;
      qm1 = qk;
      const long long r = a - q * b;
      if (r == 0) break;
      a = b;
      b = r;
      ++k;
    }
  };
  zero_to(nb, db, field_->one());
  zero_to(na, da, -field_->one());
  return reduce(v);
}

std::array<long long, 3> ManinSpace::basis_symbol(std::size_t q) const {
  const std::size_t col = basis_cols_.at(q);
  const std::size_t r = col / static_cast<std::size_t>(g_ + 1);
  return {static_cast<long long>(col % static_cast<std::size_t>(g_ + 1)), reps_[r].first, reps_[r].second};
}

ManinSpace build_space(std::uint64_t p, std::uint64_t N, int g, const DirichletChar& eps) {
  if (p <= 3 || !is_prime_u(p)) throw DomainError("build_space needs a prime p > 3");
  if (N == 0 || N % p == 0) throw DomainError("level must be prime to p");
  if (g < 0) throw DomainError("g must be non-negative");
  if (N > 2000) throw UnsupportedError("level too large for the dense Manin symbol engine");
  if (N % eps.modulus() != 0) throw DomainError("nebentype modulus must divide the level");
  if (eps.field()->p() != p) throw DomainError("nebentype values must lie in a field of characteristic p");
  ManinSpace S;
  S.p_ = p;
  S.N_ = N;
  S.g_ = g;
  S.field_ = eps.field();
  S.eps_ = eps.lift_to(N);
  const long long NN = static_cast<long long>(N);
  S.pair_rep_.assign(N * N, npos);
  S.pair_scale_.assign(N * N, S.field_->zero());
  std::vector<long long> units;
  for (long long u = 0; u < NN; ++u)
    if (std::gcd(u, NN) == 1) units.push_back(u);
  if (N == 1) units = {0};
  for (long long c = 0; c < NN; ++c) {
    for (long long d = 0; d < NN; ++d) {
      const std::size_t idx = static_cast<std::size_t>(c * NN + d);
      if (S.pair_rep_[idx] != npos) continue;
      if (std::gcd(std::gcd(c, d), NN) != 1) continue;
      const std::size_t r = S.reps_.size();
      S.reps_.emplace_back(c, d);
      for (long long u : units) {
        const std::size_t j = static_cast<std::size_t>(md(u * c, NN) * NN + md(u * d, NN));
        S.pair_rep_[j] = r;
        S.pair_scale_[j] = S.eps_(static_cast<std::int64_t>(u));
      }
    }
  }
  const FFElem one = S.field_->one();
  const FFElem jfac = (g % 2 == 0 ? one : -one) - S.eps_(static_cast<std::int64_t>(-1));
  const Mat2 sigma_inv{0, 1, -1, 0};
  const Mat2 tau_inv{-1, 1, -1, 0};  // tau^2
  const Mat2 tau_inv2{0, -1, 1, -1};  // tau
  for (const auto& [c, d] : S.reps_) {
    for (int i = 0; i <= g; ++i) {
      std::vector<std::uint64_t> P(static_cast<std::size_t>(g + 1), 0);
      P[static_cast<std::size_t>(i)] = 1;
      ManinSpace::Sparse rs, rt, rj;
      S.add_symbol(rs, P, c, d, one);
      S.add_symbol(rs, sym_act(sigma_inv, P, p), d, -c, one);
      S.add_relation(std::move(rs));
      S.add_symbol(rt, P, c, d, one);
      S.add_symbol(rt, sym_act(tau_inv, P, p), d, -c - d, one);
      S.add_symbol(rt, sym_act(tau_inv2, P, p), -c - d, c, one);
      S.add_relation(std::move(rt));
      if (!jfac.is_zero()) {
        S.add_symbol(rj, P, c, d, jfac);
        S.add_relation(std::move(rj));
      }
    }
  }
  S.finish();
  return S;
}

ManinSpace build_space(std::uint64_t p, std::uint64_t N, int g) {
  return build_space(p, N, g, DirichletChar::trivial(FiniteField::get(p, 1), 1));
}

Matrix<FFElem> hecke_operator(const ManinSpace& S, std::uint64_t l) {
  if (!is_prime_u(l)) throw DomainError(std::to_string(l) + " is not prime");
  if (S.level() % l == 0) throw UnsupportedError("U_l at l | N is out of scope");
  if (l == S.p()) throw UnsupportedError("T_p at l = p is out of scope");
  const long long L = static_cast<long long>(l), N = static_cast<long long>(S.level());
  std::vector<Mat2> cosets;
  for (long long j = 0; j < L; ++j) cosets.push_back(Mat2{1, j, 0, L});
  long long x, y;
  ext_gcd(L, N, x, y);  // x L + y N = 1
  const Mat2 sig{x, -y, N, L};
  cosets.push_back(sig * Mat2{L, 0, 0, 1});
  const std::size_t n = S.dim();
  Matrix<FFElem> T(n, n, S.field()->zero());
  for (std::size_t q = 0; q < n; ++q) {
    const auto sym = S.basis_symbol(q);
    std::vector<std::uint64_t> P(static_cast<std::size_t>(S.g() + 1), 0);
    P[static_cast<std::size_t>(sym[0])] = 1;
    const Mat2 gq = lift_to_sl2(sym[1], sym[2], N);
    const std::vector<std::uint64_t> gP = sym_act(gq, P, S.p());
    std::vector<FFElem> acc(n, S.field()->zero());
    for (const auto& delta : cosets) {
      const Mat2 M = delta * gq;
      // delta (gq P){gq 0, gq oo} = (delta gq P){M 0, M oo}
      const std::vector<std::uint64_t> Q = sym_act(delta, gP, S.p());
      const auto v = S.modular_symbol(Q, M.b, M.d, M.a, M.c);
      for (std::size_t k = 0; k < n; ++k) acc[k] += v[k];
    }
    for (std::size_t k = 0; k < n; ++k) T(k, q) = acc[k];
  }
  return T;
}

// ---- eigensystems --------------------------------------------------------

namespace {

Matrix<FFElem> embed_matrix(const Matrix<FFElem>& m, const FiniteField::Ptr& F) {
  return map_entries(m, F->zero(), [&](const FFElem& v) { return embed(v, F); });
}

// Distinct roots with multiplicity; empty optional when f does not split.
std::optional<std::vector<std::pair<FFElem, int>>> split_roots(const FFPoly& f) {
  std::vector<std::pair<FFElem, int>> out;
  FFPoly rest = f;
  int total = 0;
  for (const auto& r : roots_in_field(f)) {
    const FFPoly lin(f.zero(), {-r, one_like(r)});
    int m = 0;
    while (rest.degree() >= 1) {
      auto [qq, rr] = divmod(rest, lin);
      if (!rr.is_zero()) break;
      rest = qq;
      ++m;
    }
    out.emplace_back(r, m);
    total += m;
  }
  if (total != f.degree()) return std::nullopt;
  return out;
}

struct Piece {
  Matrix<FFElem> B;  // columns span the piece
  std::map<std::uint64_t, FFElem> a;
  bool split = true;
};

Matrix<FFElem> columns(const std::vector<std::vector<FFElem>>& cols, std::size_t rows, const FFElem& zero) {
  Matrix<FFElem> m(rows, cols.size(), zero);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

// Matrix of T on the span of the columns of B (T B = B X).
Matrix<FFElem> restrict_to(const Matrix<FFElem>& T, const Matrix<FFElem>& B) {
  const Matrix<FFElem> TB = T * B;
  Matrix<FFElem> X(B.cols(), B.cols(), B.zero());
  for (std::size_t j = 0; j < B.cols(); ++j) {
    const auto x = solve(B, TB.col(j));
    for (std::size_t i = 0; i < B.cols(); ++i) X(i, j) = x[i];
  }
  return X;
}

}  // namespace

std::vector<GL2Eigensystem> eigensystems(const ManinSpace& S, std::uint64_t lmax, int max_ext, int jobs) {
  const auto ls = primes_upto(lmax, S.p() * S.level());
  // Hecke matrices are independent given the frozen basis
  std::vector<Matrix<FFElem>> Ts(ls.size());
  {
    const std::size_t J = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t start = 0; start < ls.size(); start += J) {
      std::vector<std::future<Matrix<FFElem>>> fs;
      for (std::size_t i = start; i < std::min(ls.size(), start + J); ++i)
        fs.push_back(std::async(J > 1 ? std::launch::async : std::launch::deferred, [&S, l = ls[i]] { return hecke_operator(S, l); }));
      for (std::size_t i = 0; i < fs.size(); ++i) Ts[start + i] = fs[i].get();
    }
  }
  FiniteField::Ptr F = S.field();
  std::vector<Piece> pieces;
  if (S.dim() > 0) pieces.push_back({Matrix<FFElem>::identity(S.dim(), F->zero()), {}, true});
  for (std::size_t li = 0; li < ls.size(); ++li) {
    std::vector<Piece> next;
    for (auto& pc : pieces) {
      if (!pc.split) {
        next.push_back(pc);
        continue;
      }
      Matrix<FFElem> X = restrict_to(embed_matrix(Ts[li], F), pc.B);
      FFPoly cp = charpoly(X);
      auto roots = split_roots(cp);
      if (!roots) {
        // find the least extension of the current field that splits cp
        FiniteField::Ptr G;
        for (int k = F->k() * 2; k <= max_ext; k += F->k()) {
          const auto cand = FiniteField::get(S.p(), k);
          if (split_roots(embed_poly(cp, cand))) {
            G = cand;
            break;
          }
        }
        if (!G) {
          pc.split = false;
          next.push_back(pc);
          continue;
        }
        F = G;
        for (auto& q : pieces) {
          q.B = embed_matrix(q.B, F);
          for (auto& [l, v] : q.a) v = embed(v, F);
        }
        for (auto& q : next) {
          q.B = embed_matrix(q.B, F);
          for (auto& [l, v] : q.a) v = embed(v, F);
        }
        X = restrict_to(embed_matrix(Ts[li], F), pc.B);
        roots = split_roots(charpoly(X));
      }
      for (const auto& [r, m] : *roots) {
        Matrix<FFElem> A = X;
        for (std::size_t i = 0; i < A.rows(); ++i) A(i, i) = A(i, i) - r;
        const auto ker = kernel(A);
        Piece np;
        np.B = pc.B * columns(ker, X.rows(), F->zero());
        np.a = pc.a;
        np.a[ls[li]] = r;
        next.push_back(std::move(np));
      }
    }
    pieces = std::move(next);
  }
  std::vector<GL2Eigensystem> out;
  for (const auto& pc : pieces) {
    GL2Eigensystem e;
    e.field = F;
    e.p = S.p();
    e.N = S.level();
    e.g = S.g();
    e.eps = S.eps().to_field(F);
    for (const auto& [l, v] : pc.a) e.a[l] = embed(v, F);
    e.multiplicity = pc.B.cols();
    e.split = pc.split;
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const GL2Eigensystem& u, const GL2Eigensystem& v) {
    for (const auto& [l, x] : u.a) {
      const auto it = v.a.find(l);
      if (it == v.a.end()) return false;
      if (x != it->second) return lex_less(x, it->second);
    }
    return false;
  });
  return out;
}

std::size_t joint_eigenspace_dim(const ManinSpace& S, const std::map<std::uint64_t, FFElem>& targets) {
  const std::size_t n = S.dim();
  if (n == 0) return 0;
  FiniteField::Ptr F = S.field();
  for (const auto& [l, v] : targets) F = common_field(F, v.field());
  std::vector<std::vector<FFElem>> rows;
  for (const auto& [l, v] : targets) {
    Matrix<FFElem> T = embed_matrix(hecke_operator(S, l), F);
    const FFElem t = embed(v, F);
    for (std::size_t i = 0; i < n; ++i) T(i, i) = T(i, i) - t;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(T.row(i));
  }
  if (rows.empty()) return n;
  return n - rank(Matrix<FFElem>::from_rows(rows, F->zero()));
}

EigenSystem to_eigensystem(const GL2Eigensystem& e) {
  EigenSystem es = make_eigensystem(e.p, e.N, 2, e.g);
  es.field = e.field;
  es.eps = e.eps.to_field(e.field);
  for (const auto& [l, v] : e.a) es.table[l] = {embed(v, e.field)};
  return es;
}

// ---- Eisenstein eigensystems ----------------------------------------------

bool EisensteinReport::ok() const {
  if (!predicted || eigen_dim == 0 || rows.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const EisensteinRow& r) { return r.hecke_ok; });
}

EisensteinReport verify_eisenstein(const DirichletChar& x, const DirichletChar& y, long a, std::uint64_t p, std::uint64_t lmax) {
  if (a < 2 || a > static_cast<long>(p)) throw DomainError("outside the Eisenstein case: need 2 <= a <= p");
  if (x.parity() * y.parity() != (a % 2 ? 1 : -1))
    throw DomainError("outside the Eisenstein case: parity XY(-1) = (-1)^(a+1) fails");
  const std::uint64_t NM = x.modulus() * y.modulus();
  if (std::gcd(x.modulus(), y.modulus()) != 1) throw DomainError("outside the Eisenstein case: moduli of X and Y must be coprime");
  if (NM % 2 == 0 || NM % 3 == 0 || p <= 3 || NM % p == 0) throw DomainError("outside the Eisenstein case: need p > 3 and p prime to 6NM");
  const auto F = common_field(x.field(), y.field());
  const RepPtr rho = GaloisRep::direct_sum({GaloisRep::character(p, a, x.to_field(F)), GaloisRep::character(p, 0, y.to_field(F))});

  EisensteinReport r;
  r.p = p;
  r.a = a;
  r.g = a - 1;
  const WeightPrediction w = predicted_weight(rho, Arrangement{{0}, {1}});
  r.level = predicted_level(rho);
  r.eps = w.eps;
  r.prediction_note = w.note;
  r.exceptional = !w.note.empty();
  for (std::size_t i = 0; i < w.tuples.size(); ++i) {
    if (w.tuples[i].b == std::vector<long>{a - 1, 0}) {
      r.predicted = true;
      r.minimal = i == w.chosen;
    }
  }
  const std::uint64_t level = to_u64(r.level);
  const ManinSpace S = build_space(p, level, static_cast<int>(r.g), r.eps.to_field(F).lift_to(level));
  r.space_dim = S.dim();
  std::map<std::uint64_t, FFElem> targets;
  EigenSystem es = make_eigensystem(p, level, 2, r.g);
  es.field = F;
  es.eps = r.eps.to_field(F);
  for (std::uint64_t l : primes_upto(lmax, p * level)) {
    const FFElem al = embed(x(static_cast<std::int64_t>(l)), F) * F->from_int(I(l)).pow(Integer(a)) + embed(y(static_cast<std::int64_t>(l)), F);
    targets[l] = al;
    es.table[l] = {al};
  }
  r.eigen_dim = joint_eigenspace_dim(S, targets);
  for (const auto& [l, al] : targets) {
    EisensteinRow row;
    row.l = l;
    row.expected = al;
    row.hecke_ok = ff_poly_equal(hecke_polynomial(es, l), frob_charpoly(rho, l));
    r.rows.push_back(row);
  }
  return r;
}

std::string format_eisenstein(const EisensteinReport& r) {
  std::ostringstream os;
  os << "p " << r.p << "  a " << r.a << "  level " << r.level << "  nebentype "
     << (r.eps.is_trivial() ? std::string("trivial") : r.eps.to_string()) << '\n';
  os << "weight F(" << r.g << ", 0)  g = " << r.g << "  k = " << r.g + 2 << (r.predicted ? "  predicted" : "  NOT predicted")
     << (r.minimal ? " (minimal)" : "") << '\n';
  if (!r.prediction_note.empty()) os << "note: " << r.prediction_note << '\n';
  os << "space dim " << r.space_dim << "  joint eigenspace dim " << r.eigen_dim << '\n';
  for (const auto& row : r.rows)
    os << "  l " << row.l << "  a_l " << row.expected.to_string() << "  attached " << (row.hecke_ok ? "ok" : "FAIL") << '\n';
  os << "verdict " << (r.ok() ? "verified" : "FAILED") << '\n';
  return os.str();
}

std::string format_gl2_eigensystems(const std::vector<GL2Eigensystem>& es) {
  std::ostringstream os;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto& e = es[i];
    os << "# eigensystem " << i + 1 << " of " << es.size() << ": field " << e.field->name() << ", weight " << e.weight()
       << ", multiplicity " << e.multiplicity << (e.split ? "" : ", unsplit") << '\n';
    os << format_eigendata(to_eigensystem(e));
  }
  return os.str();
}

}  // namespace galhecke
