#pragma once

#include <optional>
#include <string>
#include <vector>

#include "galhecke/galrep/galois_rep.hpp"
#include "galhecke/numfield/relative.hpp"
#include "galhecke/numfield/two_adic.hpp"

namespace galhecke {

struct A4Dataset {
  std::uint64_t p = 0;
  IntPoly f;
  std::optional<std::string> gexpr;
  std::vector<std::vector<Rational>> basis2;  // optional, power-basis coordinates
};

// Quartic datafile: `p <prime>`, `f <coeffs low first>`, optional `g <expr>`,
// optional `basis2 <n rationals>` lines. '#' starts a comment.
A4Dataset parse_a4_dataset(const std::string& text);
A4Dataset read_a4_dataset(const std::string& path);

struct CheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct QuarticChecklist {
  std::vector<CheckItem> items;
  Integer index_candidate = 0;  // sqrt(disc f / p^2) when that is a square
  bool index_approximate = false;
  bool ok() const;
  std::string failures() const;
};

QuarticChecklist validate_quartic(const A4Dataset& ds);

struct SComputation {
  NFElem r;   // N_{K/F}(g)
  NFElem s;
  Integer n;  // r = n s
};
SComputation compute_s(const A4Dataset& ds);

struct A4Report {
  std::uint64_t p = 0;
  QuarticChecklist checks;
  NFElem s;
  Integer content_n;
  Rational norm_s, trace_s;
  bool p_coprime = false;
  bool dedekind_2 = false;
  Integer index2;
  bool two_unramified = false;
  NFElem t;         // s or -s, the generator unramified at 2
  int verdict = 0;  // +1 totally real, -1 totally complex, 0 mixed signature
  std::vector<std::string> notes;
  std::string verdict_symbol() const;
};

// t = s if s passes the 2-adic square test, else -s; sign of t decides.
struct SignDecision {
  bool two_unramified = false;
  NFElem t;
  int verdict = 0;
};
SignDecision decide_sign(const NFElem& s, const TwoAdicContext& ctx);

A4Report decide_real_or_complex(const A4Dataset& ds);

// Atom for the unimodular lift attached to an analyzed dataset.
A4Atom a4_atom(const A4Dataset& ds, const A4Report& rep);

std::string format_a4_report(const A4Report& r);

}  // namespace galhecke
