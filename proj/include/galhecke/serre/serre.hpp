#pragma once

#include <string>
#include <vector>

#include "galhecke/galrep/galois_rep.hpp"

namespace galhecke {

// Parameters of an irreducible GL(n, F_p)-module F(b_1, ..., b_n).
struct GoodTuple {
  std::vector<long> b;
  std::uint64_t p = 0;

  // Doty-Walker degree b_1 + b_2 p + ... + b_n p^(n-1).
  Integer g() const;
  std::string to_string() const;
  bool operator==(const GoodTuple& o) const { return p == o.p && b == o.b; }
  bool operator<(const GoodTuple& o) const;
};

bool is_good(const std::vector<long>& b, std::uint64_t p);

// All good tuples congruent to a mod p-1, sorted by g.
std::vector<GoodTuple> good_normalize(const std::vector<long>& a, std::uint64_t p);

// Twisting F(b) by omega, on one tuple: +1 everywhere, or -(p-2) everywhere when b_n = p-2.
GoodTuple twist_tuple(const GoodTuple& t);
std::vector<GoodTuple> twist_weight(const std::vector<GoodTuple>& ts);

// Positions (0-based) of the coordinates of each block, in the order of
// blocks(rep) and of the block's own coordinates.
using Arrangement = std::vector<std::vector<int>>;
std::string format_arrangement(const Arrangement& a);

struct ArrangementCheck {
  Arrangement arrangement;
  bool accepted = false;
  int sign = 0;  // global sign s of s * diag(1, -1, 1, ...) when accepted
  std::string reason;
};

struct ParityReport {
  bool global_ok = false;
  std::vector<int> eigenvalues;  // all of rho(Frob_inf), blockwise
  std::vector<ArrangementCheck> arrangements;
  std::vector<Arrangement> accepted() const;
};

ParityReport strict_parity(const RepPtr& rep);

struct WeightPrediction {
  Arrangement arrangement;
  std::vector<long> exponents;  // a_1..a_n by position
  std::vector<long> shifted;    // a_i - (n - i)
  std::vector<GoodTuple> tuples;
  std::size_t chosen = 0;
  DirichletChar eps;
  std::string note;
  const GoodTuple& best() const { return tuples.at(chosen); }
};

WeightPrediction predicted_weight(const RepPtr& rep, const Arrangement& arrangement);
Integer predicted_level(const RepPtr& rep);
DirichletChar predicted_nebentype(const RepPtr& rep);

struct Prediction {
  std::uint64_t p = 0;
  int n = 0;
  Integer level;
  DirichletChar eps;
  ParityReport parity;
  std::vector<WeightPrediction> weights;  // accepted arrangements, best g first
  const WeightPrediction& best() const;
};

Prediction predict(const RepPtr& rep);

struct ExponentChoice {
  long j = 0;
  long k = 0;
  std::vector<long> abc;
  Integer g;
  RepPtr rho;
  Arrangement arrangement;
};

// rho = omega^j sigma + omega^k with j killing one exponent of sigma, k in
// {1, 2} of the parity forced by sigma(Frob_inf); strict-parity accepted
// arrangements only, sorted by g.
std::vector<ExponentChoice> choose_exponents(const RepPtr& sigma);

struct DualInvariants {
  Integer level;
  DirichletChar eps;
  std::vector<GoodTuple> tuples;
};
DualInvariants dual_invariants(const RepPtr& rep, const WeightPrediction& w);

std::string format_prediction(const Prediction& pr);

}  // namespace galhecke
