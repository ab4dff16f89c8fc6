#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "galhecke/exactalg/matrix.hpp"
#include "galhecke/galrep/dirichlet.hpp"
#include "galhecke/hecke/hecke.hpp"
#include "galhecke/serre/serre.hpp"

namespace galhecke {

// Integer 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;
  Mat2 operator*(const Mat2& o) const { return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d}; }
  long long det() const { return a * d - b * c; }
};

// Sym^g over F_p, basis X^i Y^(g-i) indexed by i. gamma acts on the left by
// (gamma P)(X, Y) = P(dX - bY, -cX + aY).
std::vector<std::uint64_t> sym_act(const Mat2& gamma, const std::vector<std::uint64_t>& P, std::uint64_t p);

// Modular symbols for Gamma0(N) with coefficients Sym^g (x) eps, presented by
// Manin symbols [X^i Y^(g-i), (c:d)] = g_cd (X^i Y^(g-i) {0, oo}) where g_cd in
// SL2(Z) has bottom row (c, d) mod N. Diamond operators act by eps(d), so the
// eigensystems are those of forms of weight g + 2 and nebentype eps.
class ManinSpace {
 public:
  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t level() const noexcept { return N_; }
  int g() const noexcept { return g_; }
  const DirichletChar& eps() const noexcept { return eps_; }
  const FiniteField::Ptr& field() const noexcept { return field_; }

  std::size_t p1_size() const noexcept { return reps_.size(); }
  std::size_t free_dim() const noexcept { return reps_.size() * static_cast<std::size_t>(g_ + 1); }
  std::size_t relation_rank() const noexcept { return pivot_rows_.size(); }
  std::size_t dim() const noexcept { return basis_cols_.size(); }

  // Quotient coordinates of the Manin symbol [P, (c, d)] (P over F_p).
  std::vector<FFElem> manin_symbol(const std::vector<std::uint64_t>& P, long long c, long long d) const;
  // Quotient coordinates of P{alpha, beta} with alpha = num_a/den_a etc. (den 0 is oo).
  std::vector<FFElem> modular_symbol(const std::vector<std::uint64_t>& P, long long na, long long da, long long nb,
                                     long long db) const;
  // Manin symbol of quotient basis vector q, as (monomial index, pair).
  std::array<long long, 3> basis_symbol(std::size_t q) const;

  friend ManinSpace build_space(std::uint64_t p, std::uint64_t N, int g, const DirichletChar& eps);

 private:
  using Sparse = std::map<std::size_t, FFElem>;
  void add_symbol(Sparse& v, const std::vector<std::uint64_t>& P, long long c, long long d, const FFElem& scale) const;
  std::vector<FFElem> reduce(const Sparse& v) const;
  void add_relation(Sparse v);
  void finish();

  std::uint64_t p_ = 0, N_ = 1;
  int g_ = 0;
  DirichletChar eps_;
  FiniteField::Ptr field_;
  std::vector<std::pair<long long, long long>> reps_;
  std::vector<std::size_t> pair_rep_;  // c*N + d -> rep index (or npos)
  std::vector<FFElem> pair_scale_;     // [P, (c,d)] = scale * [P, rep]
  std::map<std::size_t, std::vector<std::pair<std::size_t, FFElem>>> pivot_rows_;  // lead col -> row, lead 1
  std::vector<std::size_t> basis_cols_;
  std::vector<std::size_t> col_to_basis_;
};

ManinSpace build_space(std::uint64_t p, std::uint64_t N, int g, const DirichletChar& eps);
ManinSpace build_space(std::uint64_t p, std::uint64_t N, int g);

// Columns are images of the quotient basis vectors.
Matrix<FFElem> hecke_operator(const ManinSpace& space, std::uint64_t l);

struct GL2Eigensystem {
  FiniteField::Ptr field;
  std::uint64_t p = 0, N = 1;
  int g = 0;
  DirichletChar eps;
  std::map<std::uint64_t, FFElem> a;  // T_l eigenvalues
  std::size_t multiplicity = 0;       // dimension of the joint eigenspace
  bool split = true;                  // false when a factor needs an extension beyond the cap
  int weight() const { return g + 2; }
};

// Joint eigenspaces of T_l for primes l <= lmax not dividing pN, by iterated
// kernel splitting; extensions of F_p up to degree max_ext.
std::vector<GL2Eigensystem> eigensystems(const ManinSpace& space, std::uint64_t lmax, int max_ext = 6, int jobs = 1);

// Dimension of the joint kernel of T_l - a_l over the given l.
std::size_t joint_eigenspace_dim(const ManinSpace& space, const std::map<std::uint64_t, FFElem>& targets);

// The n = 2 Hecke datum: a(l,1) = a_l, a(l,2) = eps(l) l^g implied.
EigenSystem to_eigensystem(const GL2Eigensystem& es);

struct EisensteinRow {
  std::uint64_t l = 0;
  FFElem expected;
  bool hecke_ok = false;  // Hecke polynomial equals det(1 - rho(Frob_l) X)
};

struct EisensteinReport {
  std::uint64_t p = 0;
  long a = 0;
  Integer level;
  DirichletChar eps;
  long g = 0;
  bool predicted = false;     // F(a-1, 0) among the predicted good tuples
  bool minimal = false;       // ... and it is the chosen one
  bool exceptional = false;   // rho = 1 + omega at level 1
  std::string prediction_note;
  std::size_t space_dim = 0;
  std::size_t eigen_dim = 0;
  std::vector<EisensteinRow> rows;
  bool ok() const;
};

// The eigensystem x(l) l^a + y(l) of rho = x omega^a + y in weight F(a-1, 0)
// at the predicted level and nebentype, found in the modular symbols.
EisensteinReport verify_eisenstein(const DirichletChar& x, const DirichletChar& y, long a, std::uint64_t p, std::uint64_t lmax = 13);
std::string format_eisenstein(const EisensteinReport& r);
std::string format_gl2_eigensystems(const std::vector<GL2Eigensystem>& es);

}  // namespace galhecke
