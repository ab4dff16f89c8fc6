#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "galhecke/exactalg/polyfactor.hpp"
#include "galhecke/galrep/dirichlet.hpp"
#include "galhecke/numfield/number_field.hpp"
#include "galhecke/quadforms/quadforms.hpp"

namespace galhecke {

// ---- A4-hat atoms -------------------------------------------------------

enum class A4Class { identity, double_transposition, three_cycle };

struct FrobClassA4 {
  A4Class label;
  int lift_order;  // 1 or 2, 4, 3 or 6
};

std::string to_string(A4Class c);
// Trace of the unimodular 2-dimensional representation of the double cover
// on an element of the given order (1, 2, 3, 4, 6).
int a4hat_trace(int element_order);
// Builds the 24-element group inside SL(2, field) (field must contain a
// square root of -1, characteristic odd) and checks a4hat_trace on every
// element; returns the number of elements checked (24) or throws.
int verify_a4hat_trace_table(const FiniteField::Ptr& field);

FrobClassA4 a4_frob_class(const IntPoly& f, const NFElem& s, std::uint64_t l);

enum class A4Lift { e3, e6 };

struct A4Atom {
  std::uint64_t p = 0;
  IntPoly f;  // may be empty: local invariants only, no Frobenius data
  std::optional<NFElem> s;  // generator of K-hat over K, when known
  int realquad = 1;         // +1: K-hat totally real, -1: totally complex
};

// ---- dihedral atoms -----------------------------------------------------

IntPoly cyclotomic_poly(int n);
// Minimal polynomial of 2 cos(2 pi / h) over Q, h >= 3.
IntPoly cos_minpoly(int h);

struct DihedralData {
  std::uint64_t p = 0;
  std::shared_ptr<const ClassGroup> cg;
  QuadForm generator;
  FiniteField::Ptr field;  // holds tau = zeta + zeta^-1
  FFElem tau;
};
std::shared_ptr<const DihedralData> dihedral_data(std::uint64_t p);
// zeta^n + zeta^-n as a polynomial in tau (Chebyshev recursion).
FFElem dihedral_trace_value(const DihedralData& d, long n);

// ---- representation trees ----------------------------------------------

struct LocalStep {
  int order;      // g_i = |G_i|
  int fixed_dim;  // dim M^{G_i}
};

enum class RepKind { Char, Dihedral, A4Hat, Opaque, Twist, DirectSum, SymSquare, Contragredient };

class GaloisRep;
using RepPtr = std::shared_ptr<const GaloisRep>;

class GaloisRep {
 public:
  RepKind kind() const noexcept { return kind_; }
  std::uint64_t p() const noexcept { return p_; }
  int dim() const noexcept { return dim_; }
  std::string describe() const;

  // atom / node payloads
  long j = 0;                       // Char: omega exponent; Twist: exponent
  DirichletChar chi;                // Char
  int m = 0;                        // Dihedral character index
  std::shared_ptr<const DihedralData> dihedral;
  std::shared_ptr<const A4Atom> a4;  // A4Hat (always the e3 lift)
  // Opaque: 2-dim (or any) atom known only through local data
  std::string label;
  std::vector<long> exponents;      // inertia exponents at p
  int frob_inf_sign = 1;
  std::map<std::uint64_t, std::vector<LocalStep>> local_data;
  std::vector<RepPtr> children;

  // constructors
  static RepPtr character(std::uint64_t p, long j, const DirichletChar& chi);
  static RepPtr omega_power(std::uint64_t p, long j);
  static RepPtr dihedral_rep(std::uint64_t p, int m);
  static RepPtr a4hat(const A4Atom& atom, A4Lift lift = A4Lift::e3);
  static RepPtr opaque(std::uint64_t p, std::string label, std::vector<long> exponents, int frob_inf_sign,
                       std::map<std::uint64_t, std::vector<LocalStep>> local_data = {});
  static RepPtr twist(const RepPtr& rep, long j);
  static RepPtr direct_sum(const std::vector<RepPtr>& parts);
  static RepPtr sym_square(const RepPtr& rep);
  static RepPtr contragredient(const RepPtr& rep);

 private:
  GaloisRep(RepKind kind, std::uint64_t p, int dim) : kind_(kind), p_(p), dim_(dim) {}
  RepKind kind_;
  std::uint64_t p_;
  int dim_;
};

// Irreducible-block decomposition: direct sums flattened, twists and
// contragredients pushed onto the blocks.
std::vector<RepPtr> blocks(const RepPtr& rep);

// det(I - rho(Frob_l) X), constant term 1.
FFPoly frob_charpoly(const RepPtr& rep, std::uint64_t l);
// det(I - Sym^2(g) X) from det(I - g X) = 1 - tX + dX^2.
FFPoly sym_square_charpoly(const FFPoly& block);

struct FrobInfBlock {
  int dim = 0;
  bool scalar = true;
  int sign = 1;            // when scalar
  std::vector<int> eigen;  // otherwise, aligned with the block's coordinates
  std::vector<int> eigenvalues() const;
};
std::vector<FrobInfBlock> frob_infinity(const RepPtr& rep);

// Per block, exponents mod p-1 in [0, p-2].
std::vector<std::vector<long>> inertia_exponents(const RepPtr& rep);

struct DetDecomposition {
  DirichletChar eps;
  long d = 0;  // mod p-1
};
DetDecomposition det_decomposition(const RepPtr& rep);

struct BlockLocalData {
  int dim = 0;
  std::vector<LocalStep> steps;
};
std::vector<BlockLocalData> ramification_data(const RepPtr& rep, std::uint64_t q);
// f_q summed over blocks.
int conductor_exponent(const RepPtr& rep, std::uint64_t q);
// Primes q != p where some block may ramify.
std::vector<std::uint64_t> ramified_primes(const RepPtr& rep);
// Primes l (besides those) where frob_charpoly is unavailable for this model.
bool frob_available(const RepPtr& rep, std::uint64_t l);

FFPoly embed_poly(const FFPoly& f, const FiniteField::Ptr& target);
// Equality after embedding both into a common field.
bool ff_poly_equal(const FFPoly& a, const FFPoly& b);
std::string format_ff_poly(const FFPoly& f, const std::string& var = "X");

}  // namespace galhecke
