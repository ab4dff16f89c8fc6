#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "galhecke/cli/cli.hpp"
#include "galhecke/cli/repfile.hpp"
#include "galhecke/errors.hpp"
#include "galhecke/hecke/hecke.hpp"
#include "galhecke/serre/serre.hpp"

using namespace galhecke;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}

std::string data(const std::string& name) { return std::string(GALHECKE_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("galhecke_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("rep files") {
  const auto r = read_rep(data("reps/rho_277.json"));
  CHECK(r->dim() == 3);
  CHECK(r->p() == 277);
  CHECK(predict(r).best().best().g() == 90);
  CHECK(format_ff_poly(frob_charpoly(r, 5)) == "251*X^3 + 147*X^2 + 155*X + 1");

  const auto i4 = ff_root_of_unity(FiniteField::get(7, 2), Integer(4));
  const auto c = parse_rep(R"({"type": "char", "p": 7, "j": 2, "modulus": 5, "values": [")" + i4.to_string() + R"("]})");
  CHECK(c->chi.field()->k() == 2);
  CHECK(c->chi.modulus() == 5);
  CHECK(c->chi.order() == 4);
  const auto q = parse_rep(R"({"type": "symsq", "rep": {"type": "contragredient", "rep": {"type": "dihedral", "p": 229, "m": 1}}})");
  CHECK(q->dim() == 3);
  const auto o = read_rep(data("reps/p3_level277.json"));
  CHECK(predicted_level(o) == 277);

  CHECK_THROWS_AS(parse_rep("{"), ValidationError);
  CHECK_THROWS_AS(parse_rep(R"({"type": "nope"})"), ValidationError);
  CHECK_THROWS_AS(parse_rep(R"({"type": "char", "p": 8})"), ValidationError);
  CHECK_THROWS_AS(parse_rep(R"({"type": "dihedral", "p": 229, "m": 1, "local_data": []})"), ValidationError);
  CHECK_THROWS_AS(parse_rep(R"({"type": "dsum", "parts": [{"type": "char", "p": 7}, {"type": "char", "p": 11}]})"), ValidationError);
  CHECK_THROWS_AS(parse_rep(R"({"type": "twist", "rep": {"type": "char", "p": 7}})"), ValidationError);
  CHECK_THROWS_AS(read_rep("/nonexistent.json"), ValidationError);
}

TEST_CASE("cli a4 analyze") {
  auto r = run({"a4", "analyze", "--data", data("a4_p277.txt")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "p 277 verdict +"));
  CHECK(has(r.out, "10483965209607696"));

  r = run({"a4", "analyze", "--data", temp_file("nog.txt", "p 277\nf 1 3 -16 -1 1\n")});
  CHECK(r.code == 2);
  CHECK(has(r.out, "gexpr required"));

  // x^4 - 2 has Galois group D4
  r = run({"a4", "analyze", "--data", temp_file("d4.txt", "p 5\nf -2 0 0 0 1\ng 1\n")});
  CHECK(r.code == 2);
  CHECK(has(r.out, "Galois group A4"));

  const auto a = run({"--format", "lines", "a4", "analyze", "--data", data("a4_p277.txt"), "--data", data("a4_p277.txt")});
  const auto b = run({"a4", "analyze", "--jobs", "2", "--format", "lines", "--data", data("a4_p277.txt"), "--data", data("a4_p277.txt")});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(has(a.out, "verdict +"));
}

TEST_CASE("cli predict") {
  auto r = run({"predict", "--rep", data("reps/dihedral_229.json")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "predicted F(112, 0, 0) g = 112"));

  r = run({"--format", "lines", "predict", "--rep", data("reps/rho_277.json")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "g 90\n"));
  CHECK(has(r.out, "F(90, 0, 0) 90 chosen"));
  CHECK(has(r.out, "level 1\n"));

  // the a4hat atom alone: both exponent choices
  const auto cs = choose_exponents(read_rep(data("reps/a4hat_277.json")));
  std::vector<long> gs;
  for (const auto& c : cs) gs.push_back(c.g.get_si());
  CHECK(gs.front() == 90);
  CHECK(std::find(gs.begin(), gs.end(), 182) != gs.end());

  // the adjacent placement of the A4 block is rejected
  r = run({"predict", "--rep", data("reps/counter_163.json")});
  CHECK(r.code == 0);
  CHECK(has(r.out, "[{1,2},{3}]  rejected"));
  CHECK(has(r.out, "global parity ok"));
  CHECK_FALSE(has(r.out, "a = (56, 2, 0)"));
  r = run({"predict", "--rep", data("reps/counter_277.json")});
  CHECK_FALSE(has(r.out, "a = (93, 1, 0)"));

  r = run({"predict", "--rep", data("reps/p3_level277.json")});
  CHECK(has(r.out, "level 277"));
  CHECK(has(r.out, "predicted F(0, 0, 0) g = 0"));

  // omega^0 + omega^2 is even: no arrangement
  r = run({"predict", "--rep", temp_file("even.json", R"({"type": "dsum", "parts": [{"type": "char", "p": 7}, {"type": "char", "p": 7, "j": 2}]})")});
  CHECK(r.code == 2);

  // seven-dimensional sum: arrangement search is out of scope
  std::string parts;
  for (int i = 0; i < 7; ++i) parts += std::string(i ? "," : "") + R"({"type": "char", "p": 17, "j": )" + std::to_string(i) + "}";
  r = run({"predict", "--rep", temp_file("big.json", R"({"type": "dsum", "parts": [)" + parts + "]}")});
  CHECK(r.code == 4);

  CHECK(run({"predict"}).code == 2);
  CHECK(run({"predict", "--rep", "/nonexistent"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli attach check") {
  const std::string rep = data("reps/rho_277.json"), eig = data("eigen_p277.txt");
  auto r = run({"attach", "check", "--rep", rep, "--eigen", eig});
  CHECK(r.code == 0);
  CHECK(has(r.out, "MATCH"));
  CHECK(has(r.out, "verdict attached"));

  std::ifstream in(eig);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  text.replace(text.find("5 1 122"), 7, "5 1 123");
  r = run({"attach", "check", "--rep", rep, "--eigen", temp_file("pert.txt", text)});
  CHECK(r.code == 1);
  CHECK(has(r.out, "MISMATCH"));

  r = run({"attach", "check", "--rep", rep, "--eigen", eig, "--l", "277"});
  CHECK(r.code == 5);
  CHECK(has(r.err, "ramified prime"));
  CHECK(has(r.err, "277"));

  r = run({"attach", "check", "--rep", rep, "--eigen", eig, "--l", "5", "--l", "7"});
  CHECK(r.code == 5);
  CHECK(has(r.err, "data gaps at l = 7"));

  r = run({"attach", "check", "--rep", data("reps/bad_omega_cube.json"), "--eigen", eig});
  CHECK(r.code == 1);

  r = run({"attach", "check", "--rep", data("reps/dihedral_229.json"), "--eigen", eig});
  CHECK(r.code == 2);
}

TEST_CASE("cli rep frobpoly and dihedral analyze") {
  auto r = run({"rep", "frobpoly", "--rep", data("reps/rho_277.json"), "--l", "5"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "l 5  251*X^3 + 147*X^2 + 155*X + 1"));
  const auto a = run({"--format", "lines", "rep", "frobpoly", "--rep", data("reps/eis_13.json"), "--lmax", "50"});
  const auto b = run({"--jobs", "3", "--format", "lines", "rep", "frobpoly", "--rep", data("reps/eis_13.json"), "--lmax", "50"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(has(a.out, "\n5 "));
  CHECK(run({"rep", "frobpoly", "--rep", data("reps/rho_277.json"), "--l", "277"}).code == 5);

  r = run({"dihedral", "analyze", "--p", "229"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "h 3"));
  CHECK(has(r.out, "predicted g = 112"));
  r = run({"--format", "lines", "dihedral", "analyze", "--p", "577"});
  CHECK(has(r.out, "h 7\n"));
  CHECK(has(r.out, "g 286\n"));
  CHECK(run({"dihedral", "analyze", "--p", "7"}).code == 2);
}

TEST_CASE("cli gl2") {
  auto r = run({"gl2", "eigen", "--p", "13", "--g", "2", "--lmax", "13"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "2 1 9\n"));

  // a selected eigensystem is a datafile for attach check; one of them is
  // attached to X omega^2 + Y
  int attached = 0;
  for (int i = 1; i <= 40; ++i) {
    r = run({"gl2", "eigen", "--p", "13", "--level", "35", "--g", "1", "--eps", "35 12 12", "--lmax", "30", "--select", std::to_string(i)});
    if (r.code != 0) break;
    const auto es = parse_eigendata(r.out);
    CHECK(es.N == 35);
    CHECK(es.n == 2);
    const auto a = run({"attach", "check", "--rep", data("reps/eis_13.json"), "--eigen", temp_file("gl2_35.txt", r.out)});
    CHECK((a.code == 0 || a.code == 1));
    attached += a.code == 0;
  }
  CHECK(attached == 1);
  CHECK(run({"gl2", "eigen", "--p", "13", "--g", "2", "--select", "9"}).code == 2);
  CHECK(run({"gl2", "eigen", "--p", "13", "--level", "13", "--g", "2"}).code == 2);

  // 1 + omega^3 at level 35 and its eigensystem from gl2 eigen
  r = run({"gl2", "verify", "--p", "13", "--a", "2", "--x", "5 12", "--y", "7 12"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "verdict verified"));
  r = run({"gl2", "verify", "--p", "13", "--a", "3", "--x", "5 12", "--y", "7 12"});
  CHECK(r.code == 2);
  r = run({"--format", "lines", "gl2", "verify", "--p", "7", "--a", "3"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "verdict verified"));
}
