#include "galhecke/cli/cli.hpp"

#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "galhecke/a4pipeline/a4pipeline.hpp"
#include "galhecke/cli/repfile.hpp"
#include "galhecke/errors.hpp"
#include "galhecke/gl2/gl2.hpp"
#include "galhecke/hecke/hecke.hpp"
#include "galhecke/serre/serre.hpp"

namespace galhecke {

namespace {

enum class Format { table, lines };

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = std::max<std::uint64_t>(lo, 2); l <= hi; ++l)
    if (is_probable_prime(Integer(static_cast<unsigned long>(l)))) out.push_back(l);
  return out;
}

// Character argument "M v1 v2 ..." with values on unit_generators(M), as in
// the eps line of an eigenvalue datafile. "1" is the trivial character.
DirichletChar parse_char_arg(std::uint64_t p, const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.empty()) throw ValidationError("empty character argument");
  long M = 0;
  try {
    std::size_t used = 0;
    M = std::stol(tok[0], &used);
    if (used != tok[0].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ValidationError("character modulus '" + tok[0] + "' is not an integer");
  }
  if (M < 1) throw ValidationError("character modulus must be positive");
  if (M % static_cast<long>(p) == 0) throw ValidationError("character modulus must be prime to p");
  int k = 1;
  for (std::size_t i = 1; i < tok.size(); ++i) k = std::max(k, static_cast<int>(std::count(tok[i].begin(), tok[i].end(), ',')) + 1);
  const auto F = FiniteField::get(p, k);
  std::vector<FFElem> vals;
  for (std::size_t i = 1; i < tok.size(); ++i) vals.push_back(parse_ff(F, tok[i]));
  if (M == 1 || tok.size() == 1) return DirichletChar::trivial(F, static_cast<std::uint64_t>(M));
  return DirichletChar::from_generators(F, static_cast<std::uint64_t>(M), vals);
}

// Runs f over items with at most jobs in flight; results keep item order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, int jobs, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> out;
  out.reserve(items.size());
  const std::size_t batch = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t i = 0; i < items.size(); i += batch) {
    std::vector<std::future<R>> fs;
    for (std::size_t j = i; j < std::min(items.size(), i + batch); ++j)
      fs.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, f, std::cref(items[j])));
    for (auto& x : fs) out.push_back(x.get());
  }
  return out;
}

// ---- a4 analyze ---------------------------------------------------------

struct A4Outcome {
  int code = 0;
  std::string text;
};

A4Outcome analyze_one(const std::string& path, Format fmt) {
  A4Outcome o;
  std::ostringstream os;
  try {
    const auto ds = read_a4_dataset(path);
    const auto r = decide_real_or_complex(ds);
    if (fmt == Format::table) {
      os << "dataset " << path << '\n' << format_a4_report(r);
    } else {
      os << "p " << r.p << '\n';
      os << "s " << r.s.to_string() << '\n';
      os << "norm_s " << r.norm_s << '\n';
      os << "trace_s " << r.trace_s << '\n';
      os << "two_unramified " << (r.two_unramified ? 1 : 0) << '\n';
      os << "verdict " << r.verdict_symbol() << '\n';
    }
    if (r.verdict == 0) o.code = static_cast<int>(ErrorKind::Undetermined);
  } catch (const Error& e) {
    os << "dataset " << path << ": error: " << e.what() << '\n';
    o.code = e.exit_code();
  }
  o.text = os.str();
  return o;
}

// ---- dihedral analyze ---------------------------------------------------

void dihedral_report(std::uint64_t p, std::ostream& out, Format fmt) {
  const auto d = dihedral_data(p);
  const auto& cg = *d->cg;
  const auto cs = choose_exponents(GaloisRep::dihedral_rep(p, 1));
  if (fmt == Format::lines) {
    out << "p " << p << "\nh " << cg.h() << "\ngenerator " << d->generator.to_string() << "\nfield " << d->field->name()
        << "\ng " << (cs.empty() ? Integer(-1) : cs[0].g) << '\n';
    return;
  }
  out << "p " << p << "  discriminant " << cg.disc() << "  h " << cg.h() << '\n';
  out << "generator " << d->generator.to_string() << "  traces in " << d->field->name() << '\n';
  out << "cycles\n";
  for (std::size_t i = 0; i < cg.cycles().size(); ++i) {
    const int e = dlog_in_cyclic(cg, cg.cycles()[i].front(), d->generator);
    out << "  class " << i << " = generator^" << e << " :";
    for (const auto& f : cg.cycles()[i]) out << ' ' << f.to_string();
    out << '\n';
  }
  out << "characters m = 1.." << (cg.h() - 1) / 2 << " (one packet)\n";
  if (!cs.empty()) {
    const auto& c = cs[0];
    out << "rho = omega^" << c.j << " sigma + omega^" << c.k << "  a = (";
    for (std::size_t i = 0; i < c.abc.size(); ++i) out << (i ? ", " : "") << c.abc[i];
    out << ")  predicted g = " << c.g << '\n';
  }
}

// ---- predict ------------------------------------------------------------

int predict_cmd(const RepPtr& rep, std::ostream& out, Format fmt) {
  const auto pr = predict(rep);
  if (fmt == Format::table) {
    out << format_prediction(pr);
  } else {
    out << "level " << pr.level << '\n';
    out << "nebentype " << (pr.eps.is_trivial() ? std::string("trivial") : pr.eps.to_string()) << '\n';
    out << "global_parity " << (pr.parity.global_ok ? "ok" : "fails") << '\n';
    for (const auto& a : pr.parity.arrangements)
      out << "arrangement " << format_arrangement(a.arrangement) << ' ' << (a.accepted ? "accepted" : "rejected") << '\n';
    for (const auto& w : pr.weights)
      for (std::size_t i = 0; i < w.tuples.size(); ++i)
        out << "tuple " << format_arrangement(w.arrangement) << ' ' << w.tuples[i].to_string() << ' ' << w.tuples[i].g()
            << (i == w.chosen ? " chosen" : "") << '\n';
    if (!pr.weights.empty()) out << "g " << pr.best().best().g() << '\n';
  }
  if (pr.weights.empty()) throw DomainError("no arrangement satisfies strict parity");
  return 0;
}

// ---- attach check -------------------------------------------------------

int attach_cmd(const RepPtr& rep, const EigenSystem& es, std::vector<std::uint64_t> ls, int jobs, std::ostream& out,
               std::ostream& err, Format fmt) {
  if (rep->p() != es.p) throw ValidationError("rep and eigenvalue data have different p");
  if (ls.empty())
    for (const auto& kv : es.table) ls.push_back(kv.first);
  if (ls.empty()) throw DataGapError("no primes to check: the datafile has no rows and no --l was given");
  const auto r = check_attachment(rep, es, ls, jobs);
  if (fmt == Format::table) {
    out << format_attachment(r);
  } else {
    for (const auto& row : r.rows) {
      out << "l " << row.l << ' '
          << (row.status == RowStatus::Match ? "match" : row.status == RowStatus::Mismatch ? "mismatch" : "gap");
      if (row.status != RowStatus::Gap) out << " | " << row.hecke << " | " << row.charpoly;
      out << '\n';
    }
  }
  for (const auto& row : r.rows)
    if (row.status == RowStatus::Mismatch) return 1;
  if (r.has_gaps()) {
    err << "data gaps at l =";
    for (auto l : r.gaps()) err << ' ' << l;
    err << '\n';
    for (const auto& row : r.rows)
      if (row.status == RowStatus::Gap) err << "  " << row.l << ": " << row.note << '\n';
    return static_cast<int>(ErrorKind::DataGap);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"galhecke: mod p Galois representations, Serre-type predictions and Hecke attachment"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  std::string format_name = "table";
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"table", "lines"}));

  auto* a4 = app.add_subcommand("a4", "A4-hat pipeline");
  a4->require_subcommand(1);
  auto* a4_analyze = a4->add_subcommand("analyze", "run the quartic datafile pipeline");
  std::vector<std::string> a4_data;
  a4_analyze->add_option("--data", a4_data, "quartic datafile(s)")->required();

  auto* dih = app.add_subcommand("dihedral", "dihedral atoms from class groups");
  dih->require_subcommand(1);
  auto* dih_analyze = dih->add_subcommand("analyze", "class group, generator and cycles of Q(sqrt p)");
  std::vector<std::uint64_t> dih_p;
  dih_analyze->add_option("--p", dih_p, "prime(s) = 1 mod 4")->required();

  auto* pred = app.add_subcommand("predict", "weight, level and nebentype of a representation");
  std::string pred_rep;
  pred->add_option("--rep", pred_rep, "representation spec file")->required();

  auto* rep = app.add_subcommand("rep", "representation queries");
  rep->require_subcommand(1);
  auto* frob = rep->add_subcommand("frobpoly", "det(1 - rho(Frob_l) X)");
  std::string frob_rep;
  std::vector<std::uint64_t> frob_l;
  std::uint64_t frob_lmax = 0;
  frob->add_option("--rep", frob_rep, "representation spec file")->required();
  frob->add_option("--l", frob_l, "primes");
  frob->add_option("--lmax", frob_lmax, "all good primes up to this bound");

  auto* attach = app.add_subcommand("attach", "Hecke attachment");
  attach->require_subcommand(1);
  auto* check = attach->add_subcommand("check", "compare Hecke polynomials with Frobenius polynomials");
  std::string at_rep, at_eigen;
  std::vector<std::uint64_t> at_l;
  std::uint64_t at_lmax = 0;
  check->add_option("--rep", at_rep, "representation spec file")->required();
  check->add_option("--eigen", at_eigen, "eigenvalue datafile")->required();
  check->add_option("--l", at_l, "primes (default: rows of the datafile)");
  check->add_option("--lmax", at_lmax, "all primes up to this bound");

  auto* gl2 = app.add_subcommand("gl2", "modular symbols for GL(2)");
  gl2->require_subcommand(1);
  auto* eig = gl2->add_subcommand("eigen", "Hecke eigensystems on Sym^g (x) eps modular symbols");
  std::uint64_t e_p = 0, e_level = 1, e_lmax = 13;
  int e_g = 0, e_ext = 6;
  std::size_t e_select = 0;
  std::string e_eps = "1";
  eig->add_option("--p", e_p, "characteristic")->required();
  eig->add_option("--level", e_level, "level N");
  eig->add_option("--g", e_g, "Sym^g, weight g + 2")->required()->check(CLI::Range(0, 10000));
  eig->add_option("--lmax", e_lmax, "Hecke operators T_l for l <= lmax");
  eig->add_option("--eps", e_eps, "nebentype \"M v1 v2 ...\"");
  eig->add_option("--max-ext", e_ext, "largest field extension degree")->check(CLI::Range(1, 12));
  eig->add_option("--select", e_select, "print only eigensystem i (1-based), as a datafile");
  auto* ver = gl2->add_subcommand("verify", "Eisenstein eigensystem x(l) l^a + y(l) in weight F(a-1, 0)");
  std::uint64_t v_p = 0, v_lmax = 13;
  long v_a = 0;
  std::string v_x = "1", v_y = "1";
  ver->add_option("--p", v_p, "characteristic")->required();
  ver->add_option("--a", v_a, "omega exponent, 2 <= a <= p")->required();
  ver->add_option("--x", v_x, "character X as \"M v1 ...\"");
  ver->add_option("--y", v_y, "character Y as \"M v1 ...\"");
  ver->add_option("--lmax", v_lmax, "check T_l for l <= lmax");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Validation);
  }
  const Format fmt = format_name == "lines" ? Format::lines : Format::table;

  try {
    if (*a4_analyze) {
      const auto outs = parallel_map(a4_data, jobs, [&](const std::string& path) { return analyze_one(path, fmt); });
      int code = 0;
      for (std::size_t i = 0; i < outs.size(); ++i) {
        if (i) out << '\n';
        out << outs[i].text;
        code = std::max(code, outs[i].code);
      }
      return code;
    }
    if (*dih_analyze) {
      for (std::size_t i = 0; i < dih_p.size(); ++i) {
        if (i) out << '\n';
        dihedral_report(dih_p[i], out, fmt);
      }
      return 0;
    }
    if (*pred) return predict_cmd(read_rep(pred_rep), out, fmt);
    if (*frob) {
      const auto r = read_rep(frob_rep);
      std::vector<std::uint64_t> ls = frob_l;
      if (frob_lmax)
        for (auto l : primes_in(2, frob_lmax))
          if (frob_available(r, l)) ls.push_back(l);
      if (ls.empty()) throw ValidationError("give --l or --lmax");
      const auto polys = parallel_map(ls, jobs, [&](const std::uint64_t& l) {
        try {
          return std::to_string(l) + (fmt == Format::table ? "  " : " ") + format_ff_poly(frob_charpoly(r, l));
        } catch (const Error& e) {
          return std::to_string(l) + "  error: " + e.what();
        }
      });
      int code = 0;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        out << (fmt == Format::table ? "l " : "") << polys[i] << '\n';
        if (!frob_available(r, ls[i])) code = static_cast<int>(ErrorKind::DataGap);
      }
      return code;
    }
    if (*check) {
      const auto r = read_rep(at_rep);
      const auto es = read_eigendata(at_eigen);
      std::vector<std::uint64_t> ls = at_l;
      if (at_lmax)
        for (auto l : primes_in(2, at_lmax)) ls.push_back(l);
      return attach_cmd(r, es, ls, jobs, out, err, fmt);
    }
    if (*eig) {
      const auto eps = parse_char_arg(e_p, e_eps);
      const auto S = build_space(e_p, e_level, e_g, eps.lift_to(e_level));
      const auto es = eigensystems(S, e_lmax, e_ext, jobs);
      if (e_select) {
        if (e_select > es.size())
          throw ValidationError("--select " + std::to_string(e_select) + " but only " + std::to_string(es.size()) + " eigensystems");
        out << format_eigendata(to_eigensystem(es[e_select - 1]));
        return 0;
      }
      out << "# space dim " << S.dim() << " (Manin symbols " << S.free_dim() << ", relation rank " << S.relation_rank() << ")\n";
      out << format_gl2_eigensystems(es);
      return 0;
    }
    if (*ver) {
      const auto r = verify_eisenstein(parse_char_arg(v_p, v_x), parse_char_arg(v_p, v_y), v_a, v_p, v_lmax);
      if (fmt == Format::table) {
        out << format_eisenstein(r);
      } else {
        out << "level " << r.level << "\ng " << r.g << "\neigen_dim " << r.eigen_dim << '\n';
        for (const auto& row : r.rows) out << "l " << row.l << ' ' << row.expected.to_string() << (row.hecke_ok ? " ok" : " fail") << '\n';
        out << "verdict " << (r.ok() ? "verified" : "failed") << '\n';
      }
      return r.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Validation);
  }
  return 0;
}

}  // namespace galhecke
