#include "galhecke/a4pipeline/a4pipeline.hpp"

#include <fstream>
#include <sstream>

#include "galhecke/errors.hpp"
#include "galhecke/exactalg/real_roots.hpp"

namespace galhecke {

A4Dataset parse_a4_dataset(const std::string& text) {
  A4Dataset ds;
  bool have_p = false, have_f = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (key == "p") {
      const Integer p = parse_integer(rest);
      if (p < 2 || !is_probable_prime(p)) throw ValidationError(where + "p must be prime");
      ds.p = to_u64(p);
      have_p = true;
    } else if (key == "f") {
      ds.f = parse_int_poly(rest);
      have_f = true;
    } else if (key == "g") {
      if (rest.find_first_not_of(" \t\r") == std::string::npos) throw ValidationError(where + "empty g");
      ds.gexpr = rest;
    } else if (key == "basis2") {
      std::istringstream rs(rest);
      std::vector<Rational> row;
      std::string tok;
      while (rs >> tok) row.push_back(parse_rational(tok));
      ds.basis2.push_back(std::move(row));
    } else {
      throw ValidationError(where + "unknown key '" + key + "'");
    }
  }
  if (!have_p) throw ValidationError("quartic datafile: missing 'p' line");
  if (!have_f) throw ValidationError("quartic datafile: missing 'f' line");
  if (ds.f.degree() != 4 || ds.f.lead() != 1) throw ValidationError("f must be a monic quartic");
  for (const auto& row : ds.basis2)
    if (row.size() != 4) throw ValidationError("basis2 rows need 4 rationals");
  if (!ds.basis2.empty() && ds.basis2.size() != 4) throw ValidationError("basis2 needs 4 rows");
  return ds;
}

A4Dataset read_a4_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_a4_dataset(ss.str());
}

bool QuarticChecklist::ok() const {
  for (const auto& it : items)
    if (!it.ok) return false;
  return true;
}

std::string QuarticChecklist::failures() const {
  std::string out;
  for (const auto& it : items)
    if (!it.ok) out += (out.empty() ? "" : "; ") + it.name + (it.detail.empty() ? "" : " (" + it.detail + ")");
  return out;
}

QuarticChecklist validate_quartic(const A4Dataset& ds) {
  QuarticChecklist c;
  const bool shape = ds.f.degree() == 4 && ds.f.lead() == 1;
  c.items.push_back({"monic quartic", shape, shape ? "" : "degree " + std::to_string(ds.f.degree())});
  if (!shape) return c;
  const bool irr = quartic_is_irreducible(ds.f);
  c.items.push_back({"irreducible", irr, ""});
  const bool a4 = irr && galois_group_is_A4(ds.f);
  c.items.push_back({"Galois group A4", a4, ""});
  const int rr = real_root_count(ds.f);
  c.items.push_back({"four real roots", rr == 4, std::to_string(rr) + " real roots"});
  const Integer disc = poly_discriminant(ds.f);
  const Integer p(static_cast<unsigned long>(ds.p));
  const Integer p2 = p * p;
  bool sq = false;
  std::string detail = "disc f = " + disc.get_str();
  if (disc % p2 == 0 && is_perfect_square(Integer(disc / p2))) {
    sq = true;
    c.index_candidate = isqrt(Integer(disc / p2));
    c.index_approximate = c.index_candidate > 1;
    detail += ", index candidate " + c.index_candidate.get_str();
  }
  c.items.push_back({"disc f = p^2 * square", sq, detail});
  return c;
}

SComputation compute_s(const A4Dataset& ds) {
  if (!ds.gexpr) throw ValidationError("gexpr required");
  const auto F = NumberField::create(ds.f);
  const NFElem r = rel_norm(*ds.gexpr, F);
  if (r.is_zero()) throw DomainError("relative norm of g is zero");
  const auto cr = content_removed(r);
  return {r, cr.s, cr.n};
}

std::string A4Report::verdict_symbol() const { return verdict > 0 ? "+" : verdict < 0 ? "-" : "?"; }

SignDecision decide_sign(const NFElem& s, const TwoAdicContext& ctx) {
  SignDecision d;
  d.two_unramified = two_adic_unramified(s, ctx);
  d.t = d.two_unramified ? s : -s;
  if (totally_positive(d.t)) d.verdict = 1;
  else if (totally_positive(-d.t)) d.verdict = -1;
  return d;
}

A4Report decide_real_or_complex(const A4Dataset& ds) {
  A4Report r;
  r.p = ds.p;
  r.checks = validate_quartic(ds);
  if (!r.checks.ok()) throw ValidationError("quartic validation failed: " + r.checks.failures());
  if (!ds.gexpr) throw ValidationError("gexpr required");
  const auto sc = compute_s(ds);
  r.s = sc.s;
  r.content_n = sc.n;
  r.norm_s = nf_norm(r.s);
  r.trace_s = nf_trace(r.s);
  const Integer p(static_cast<unsigned long>(ds.p));
  r.p_coprime = Integer(r.norm_s.get_num()) % p != 0;
  if (!r.p_coprime) throw DomainError("s not coprime to p: pipeline assumption violated");
  const auto F = r.s.field();
  r.dedekind_2 = dedekind_p_maximal(ds.f, 2);
  std::optional<TwoAdicContext> ctx;
  if (!ds.basis2.empty()) {
    std::vector<NFElem> b;
    for (const auto& row : ds.basis2) b.push_back(F->from_coords(row));
    ctx = TwoAdicContext::from_basis(F, b);
    r.notes.push_back("2-maximal order from supplied basis2");
  } else {
    ctx = TwoAdicContext::compute(F);
  }
  r.index2 = ctx->index2();
  if (!r.dedekind_2) r.notes.push_back("Z[a] is not 2-maximal; 2-part of the index is " + r.index2.get_str());
  if (r.checks.index_approximate)
    r.notes.push_back("field discriminant tested by the proxy disc f = p^2 * square (index candidate " +
                      r.checks.index_candidate.get_str() + ")");
  if (!ctx->unramified()) throw UndeterminedError("verdict undetermined at 2: 2 ramifies in F");
  const auto d = decide_sign(r.s, *ctx);
  r.two_unramified = d.two_unramified;
  r.t = d.t;
  r.verdict = d.verdict;
  if (r.verdict == 0) r.notes.push_back("anomaly: t has mixed signs under the real embeddings");
  return r;
}

A4Atom a4_atom(const A4Dataset& ds, const A4Report& rep) {
  if (rep.verdict == 0) throw UndeterminedError("no Frob_inf sign for a mixed-signature s");
  A4Atom a;
  a.p = ds.p;
  a.f = ds.f;
  a.s = rep.s;
  a.realquad = rep.verdict;
  return a;
}

std::string format_a4_report(const A4Report& r) {
  std::ostringstream os;
  os << "checks\n";
  for (const auto& it : r.checks.items) {
    os << "  " << it.name;
    for (std::size_t i = it.name.size(); i < 24; ++i) os << ' ';
    os << (it.ok ? "ok" : "FAIL");
    if (!it.detail.empty()) os << "  " << it.detail;
    os << '\n';
  }
  os << "s        " << r.s.to_string() << '\n';
  os << "N        " << r.content_n << '\n';
  os << "N(s)     " << r.norm_s << '\n';
  os << "trace(s) " << r.trace_s << '\n';
  os << "N(s) mod p nonzero   " << (r.p_coprime ? "yes" : "no") << '\n';
  os << "Z[a] 2-maximal       " << (r.dedekind_2 ? "yes" : "no") << '\n';
  os << "index at 2           " << r.index2 << '\n';
  os << "2-adic test on s     " << (r.two_unramified ? "pass (t = s)" : "fail (t = -s)") << '\n';
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << "p " << r.p << " verdict " << r.verdict_symbol() << '\n';
  return os.str();
}

}  // namespace galhecke
