#pragma once

#include <map>
#include <string>
#include <vector>

#include "galhecke/galrep/dirichlet.hpp"
#include "galhecke/galrep/galois_rep.hpp"

namespace galhecke {

// Eigenvalues a(l, k) of T(l, k) on a class for GL(n). a(l, 0) = 1 and
// a(l, n) = eps(l) l^g come from the scalar matrices and are not stored.
struct EigenSystem {
  std::uint64_t p = 0;
  std::uint64_t N = 1;
  int n = 3;
  long g = 0;
  DirichletChar eps;
  FiniteField::Ptr field;
  std::map<std::uint64_t, std::vector<FFElem>> table;  // l -> a(l,1..n-1)

  FFElem a(std::uint64_t l, int k) const;
  bool has(std::uint64_t l) const { return table.count(l) != 0; }
};

// Empty system over F_p with trivial character mod N.
EigenSystem make_eigensystem(std::uint64_t p, std::uint64_t N, int n, long g);

// sum_k (-1)^k l^(k(k-1)/2) a(l,k) X^k
FFPoly hecke_polynomial(const EigenSystem& es, std::uint64_t l);

// Inverse of hecke_polynomial: a(l,k) read off a polynomial with constant
// term 1. The top coefficient must agree with eps(l) l^g.
std::vector<FFElem> eigenvalues_from_poly(const FFPoly& poly, std::uint64_t l, int n);

// a(l,k) solved from frob_charpoly(rep, l) for each l; g and eps from det rho.
EigenSystem synthetic_eigensystem(const RepPtr& rep, const std::vector<std::uint64_t>& ls);

EigenSystem dual_eigensystem(const EigenSystem& es);
// a(l,k) -> chi(l)^k l^(ik) a(l,k): the system of omega^i chi (x) rho.
EigenSystem twist_eigensystem(const EigenSystem& es, long i, const DirichletChar& chi);

enum class RowStatus { Match, Mismatch, Gap };

struct AttachmentRow {
  std::uint64_t l = 0;
  RowStatus status = RowStatus::Gap;
  std::string hecke;
  std::string charpoly;
  std::string note;
};

struct AttachmentReport {
  std::vector<AttachmentRow> rows;
  bool all_match() const;
  bool has_gaps() const;
  std::vector<std::uint64_t> gaps() const;
};

AttachmentReport check_attachment(const RepPtr& rep, const EigenSystem& es, const std::vector<std::uint64_t>& ls,
                                  int jobs = 1);
std::string format_attachment(const AttachmentReport& r);

// Datafile: header line "p N n g", optional "eps M v1 v2 ..." (values on
// unit_generators(M)), then rows "l k value"; value is an integer or k
// comma-separated F_p digits.
EigenSystem parse_eigendata(const std::string& text);
EigenSystem read_eigendata(const std::string& path);
std::string format_eigendata(const EigenSystem& es);

}  // namespace galhecke
