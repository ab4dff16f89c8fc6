#include "galhecke/hecke/hecke.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

long mod_pm1(long v, std::uint64_t p) {
  const long m = static_cast<long>(p) - 1;
  return ((v % m) + m) % m;
}

Integer I(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

// l^e in F (e may be negative)
FFElem lpow_ff(const FiniteField::Ptr& F, std::uint64_t l, long e) {
  const FFElem x = F->from_int(I(l));
  const FFElem r = x.pow(Integer(std::labs(e)));
  return e < 0 ? r.inv() : r;
}

void check_l(const EigenSystem& es, std::uint64_t l) {
  if (l % es.p == 0) throw DataGapError("ramified prime " + std::to_string(l) + " (l = p)");
  if (es.N % l == 0) throw DataGapError("ramified prime " + std::to_string(l) + " divides the level");
}

FFElem eps_at(const EigenSystem& es, std::uint64_t l) {
  if (es.eps.modulus() == 0) return es.field->one();
  return embed(es.eps(static_cast<std::int64_t>(l)), es.field);
}

void absorb_field(EigenSystem& es, const FiniteField::Ptr& F) {
  const auto C = common_field(es.field, F);
  if (C == es.field) return;
  es.field = C;
  for (auto& [l, row] : es.table)
    for (auto& v : row) v = embed(v, C);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

FFElem EigenSystem::a(std::uint64_t l, int k) const {
  check_l(*this, l);
  if (k < 0 || k > n) throw DomainError("a(l, k) needs 0 <= k <= n");
  if (k == 0) return field->one();
  if (k == n) return eps_at(*this, l) * lpow_ff(field, l, g);
  const auto it = table.find(l);
  if (it == table.end()) throw DataGapError("no eigenvalue data for l = " + std::to_string(l));
  if (static_cast<int>(it->second.size()) < k || !it->second[static_cast<std::size_t>(k - 1)].field())
    throw DataGapError("missing a(" + std::to_string(l) + ", " + std::to_string(k) + ")");
  return embed(it->second[static_cast<std::size_t>(k - 1)], field);
}

EigenSystem make_eigensystem(std::uint64_t p, std::uint64_t N, int n, long g) {
  if (p < 3 || !is_probable_prime(I(p))) throw ValidationError("p must be an odd prime");
  if (N == 0 || N % p == 0) throw ValidationError("level must be positive and prime to p");
  if (n < 1) throw ValidationError("n must be positive");
  EigenSystem es;
  es.p = p;
  es.N = N;
  es.n = n;
  es.g = g;
  es.field = FiniteField::get(p, 1);
  es.eps = DirichletChar::trivial(es.field, 1);
  return es;
}

FFPoly hecke_polynomial(const EigenSystem& es, std::uint64_t l) {
  check_l(es, l);
  if (es.n > 1 && !es.has(l)) throw DataGapError("no eigenvalue data for l = " + std::to_string(l));
  const auto& F = es.field;
  std::vector<FFElem> c;
  for (int k = 0; k <= es.n; ++k) {
    FFElem v = es.a(l, k) * lpow_ff(F, l, static_cast<long>(k) * (k - 1) / 2);
    c.push_back(k % 2 ? -v : v);
  }
  return FFPoly(F->zero(), c);
}

std::vector<FFElem> eigenvalues_from_poly(const FFPoly& poly, std::uint64_t l, int n) {
  if (poly.degree() > n) throw DomainError("polynomial degree exceeds n");
  const FFElem zero = poly.zero();
  const auto& F = zero.field();
  if (!poly[0].is_one()) throw DomainError("constant term must be 1");
  std::vector<FFElem> a;
  for (int k = 1; k <= n; ++k) {
    const FFElem c = k <= poly.degree() ? poly[static_cast<std::size_t>(k)] : zero;
    FFElem v = c / lpow_ff(F, l, static_cast<long>(k) * (k - 1) / 2);
    a.push_back(k % 2 ? -v : v);
  }
  return a;
}

EigenSystem synthetic_eigensystem(const RepPtr& rep, const std::vector<std::uint64_t>& ls) {
  const auto dd = det_decomposition(rep);
  const int n = rep->dim();
  std::uint64_t N = 1;
  for (std::uint64_t q : ramified_primes(rep)) {
    const int f = conductor_exponent(rep, q);
    for (int i = 0; i < f; ++i) N *= q;
  }
  EigenSystem es = make_eigensystem(rep->p(), N, n, mod_pm1(dd.d - static_cast<long>(n) * (n - 1) / 2, rep->p()));
  es.eps = dd.eps.primitive();
  absorb_field(es, es.eps.field());
  for (std::uint64_t l : ls) {
    const FFPoly c = frob_charpoly(rep, l);
    absorb_field(es, c.zero().field());
    auto a = eigenvalues_from_poly(c, l, n);
    a.pop_back();
    for (auto& v : a) v = embed(v, es.field);
    es.table[l] = a;
  }
  return es;
}

EigenSystem dual_eigensystem(const EigenSystem& es) {
  EigenSystem d = es;
  d.eps = es.eps.inv();
  d.g = mod_pm1(-es.g - static_cast<long>(es.n) * (es.n - 1), es.p);
  for (auto& [l, row] : d.table) {
    const FFPoly P = hecke_polynomial(es, l);
    const FFElem top = P[static_cast<std::size_t>(es.n)];
    std::vector<FFElem> rc;
    for (int k = 0; k <= es.n; ++k) rc.push_back(P[static_cast<std::size_t>(es.n - k)] / top);
    auto a = eigenvalues_from_poly(FFPoly(es.field->zero(), rc), l, es.n);
    a.pop_back();
    row = a;
  }
  return d;
}

EigenSystem twist_eigensystem(const EigenSystem& es, long i, const DirichletChar& chi) {
  if (chi.modulus() % es.p == 0) throw DomainError("twisting character must be prime to p");
  EigenSystem t = es;
  absorb_field(t, chi.field());
  t.N = std::lcm(es.N, chi.modulus());
  t.eps = es.eps * chi.pow(es.n);
  t.g = es.g + static_cast<long>(es.n) * i;
  absorb_field(t, t.eps.field());
  std::erase_if(t.table, [&](const auto& kv) { return chi.modulus() % kv.first == 0; });
  for (auto& [l, row] : t.table) {
    const FFElem u = embed(chi(static_cast<std::int64_t>(l)), t.field) * lpow_ff(t.field, l, i);
    FFElem uk = u;
    for (auto& v : row) {
      v = v * uk;
      uk *= u;
    }
  }
  return t;
}

bool AttachmentReport::all_match() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const AttachmentRow& r) { return r.status == RowStatus::Match; });
}

bool AttachmentReport::has_gaps() const { return !gaps().empty(); }

std::vector<std::uint64_t> AttachmentReport::gaps() const {
  std::vector<std::uint64_t> out;
  for (const auto& r : rows)
    if (r.status == RowStatus::Gap) out.push_back(r.l);
  return out;
}

AttachmentReport check_attachment(const RepPtr& rep, const EigenSystem& es, const std::vector<std::uint64_t>& ls, int jobs) {
  if (rep->p() != es.p) throw ValidationError("representation and eigensystem have different p");
  if (rep->dim() != es.n) throw ValidationError("representation dimension differs from n");
  auto one = [&](std::uint64_t l) {
    AttachmentRow row;
    row.l = l;
    try {
      const FFPoly h = hecke_polynomial(es, l);
      row.hecke = format_ff_poly(h);
      const FFPoly c = frob_charpoly(rep, l);
      row.charpoly = format_ff_poly(c);
      row.status = ff_poly_equal(h, c) ? RowStatus::Match : RowStatus::Mismatch;
    } catch (const DataGapError& e) {
      row.status = RowStatus::Gap;
      row.note = e.what();
    }
    return row;
  };
  AttachmentReport r;
  r.rows.resize(ls.size());
  const std::size_t J = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < ls.size(); start += J) {
    std::vector<std::future<AttachmentRow>> fs;
    for (std::size_t i = start; i < std::min(ls.size(), start + J); ++i)
      fs.push_back(std::async(J > 1 ? std::launch::async : std::launch::deferred, one, ls[i]));
    for (std::size_t i = 0; i < fs.size(); ++i) r.rows[start + i] = fs[i].get();
  }
  return r;
}

std::string format_attachment(const AttachmentReport& r) {
  std::size_t wh = 5, wc = 8;
  for (const auto& row : r.rows) {
    wh = std::max(wh, row.hecke.size());
    wc = std::max(wc, row.charpoly.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::ostringstream os;
  os << pad("l", 6) << " | " << pad("hecke", wh) << " | " << pad("charpoly", wc) << " | MATCH?\n";
  for (const auto& row : r.rows) {
    os << pad(std::to_string(row.l), 6) << " | " << pad(row.hecke, wh) << " | " << pad(row.charpoly, wc) << " | ";
    switch (row.status) {
      case RowStatus::Match: os << "MATCH"; break;
      case RowStatus::Mismatch: os << "MISMATCH"; break;
      case RowStatus::Gap: os << "GAP (" << row.note << ")"; break;
    }
    os << '\n';
  }
  os << "verdict " << (r.all_match() ? "attached" : r.has_gaps() ? "incomplete" : "not attached") << '\n';
  return os.str();
}

EigenSystem parse_eigendata(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  EigenSystem es;
  struct Raw {
    std::uint64_t l;
    int k;
    std::string value;
    int lineno;
  };
  std::vector<Raw> raws;
  std::vector<std::string> eps_tokens;
  auto as_u64 = [](const std::string& tok, const std::string& where) {
    try {
      const Integer v = parse_integer(tok);
      if (v < 0) throw ValidationError(where + "negative value");
      return to_u64(v);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError(where + "bad integer '" + tok + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (!header) {
      if (tok.size() != 4) throw ValidationError(where + "header must be 'p N n g'");
      es = make_eigensystem(as_u64(tok[0], where), as_u64(tok[1], where), static_cast<int>(as_u64(tok[2], where)),
                            parse_integer(tok[3]).get_si());
      header = true;
      continue;
    }
    if (tok[0] == "eps") {
      if (!eps_tokens.empty()) throw ValidationError(where + "duplicate eps line");
      if (tok.size() < 2) throw ValidationError(where + "eps needs a modulus");
      eps_tokens.assign(tok.begin() + 1, tok.end());
      continue;
    }
    if (tok.size() != 3) throw ValidationError(where + "expected 'l k value'");
    raws.push_back({as_u64(tok[0], where), static_cast<int>(as_u64(tok[1], where)), tok[2], lineno});
  }
  if (!header) throw ValidationError("eigenvalue datafile: missing header");
  // field: the largest extension any value is written in
  int k = 1;
  auto digits = [](const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), ',')) + 1; };
  for (const auto& r : raws) k = std::max(k, digits(r.value));
  for (std::size_t i = 1; i < eps_tokens.size(); ++i) k = std::max(k, digits(eps_tokens[i]));
  auto value_in = [&](const std::string& s, int line_no) {
    try {
      const auto Fs = FiniteField::get(es.p, digits(s));
      return parse_ff(Fs, s);
    } catch (const std::exception& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": bad field element '" + s + "': " + e.what());
    }
  };
  FiniteField::Ptr F = FiniteField::get(es.p, 1);
  for (const auto& r : raws) F = common_field(F, value_in(r.value, r.lineno).field());
  for (std::size_t i = 1; i < eps_tokens.size(); ++i) F = common_field(F, value_in(eps_tokens[i], 0).field());
  es.field = F;
  if (!eps_tokens.empty()) {
    const std::uint64_t M = as_u64(eps_tokens[0], "eps: ");
    if (es.N % M != 0) throw ValidationError("eps modulus must divide N");
    std::vector<FFElem> vals;
    for (std::size_t i = 1; i < eps_tokens.size(); ++i) vals.push_back(embed(value_in(eps_tokens[i], 0), F));
    es.eps = DirichletChar::from_generators(F, M, vals);
  } else {
    es.eps = DirichletChar::trivial(F, 1);
  }
  for (const auto& r : raws) {
    const std::string where = "line " + std::to_string(r.lineno) + ": ";
    if (r.k < 1 || r.k >= es.n) throw ValidationError(where + "k must be in 1..n-1 (a(l,0) and a(l,n) are implied)");
    if (!is_probable_prime(I(r.l))) throw ValidationError(where + "l must be prime");
    if (r.l == es.p || es.N % r.l == 0) throw ValidationError(where + "l must be prime to pN");
    auto& row = es.table[r.l];
    row.resize(static_cast<std::size_t>(es.n - 1));
    if (row[static_cast<std::size_t>(r.k - 1)].field()) throw ValidationError(where + "duplicate entry");
    row[static_cast<std::size_t>(r.k - 1)] = embed(value_in(r.value, r.lineno), F);
  }
  return es;
}

EigenSystem read_eigendata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_eigendata(ss.str());
}

std::string format_eigendata(const EigenSystem& es) {
  std::ostringstream os;
  os << es.p << ' ' << es.N << ' ' << es.n << ' ' << es.g << '\n';
  if (es.eps.modulus() > 1 && !es.eps.is_trivial()) {
    os << "eps " << es.eps.modulus();
    for (const auto& v : es.eps.generator_values()) os << ' ' << embed(v, es.field).to_string();
    os << '\n';
  }
  for (const auto& [l, row] : es.table)
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k].field()) os << l << ' ' << k + 1 << ' ' << row[k].to_string() << '\n';
  return os.str();
}

}  // namespace galhecke
