#include "galhecke/cli/repfile.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "galhecke/a4pipeline/a4pipeline.hpp"
#include "galhecke/errors.hpp"

namespace galhecke {

namespace {

using json = nlohmann::json;

const json& need(const json& node, const char* key) {
  if (!node.contains(key)) throw ValidationError(std::string("rep file: missing '") + key + "' in " + node.dump());
  return node.at(key);
}

long get_long(const json& node, const char* key) {
  const json& v = need(node, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("rep file: '") + key + "' must be an integer");
  return v.get<long>();
}

std::uint64_t get_prime(const json& node) {
  const long p = get_long(node, "p");
  if (p < 2 || !is_probable_prime(Integer(p))) throw ValidationError("rep file: p = " + std::to_string(p) + " is not prime");
  return static_cast<std::uint64_t>(p);
}

std::string value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw ValidationError("rep file: character values are integers or \"c0,c1,...\" strings");
}

DirichletChar parse_char(const json& node, std::uint64_t p) {
  int k = 1;
  if (node.contains("degree")) k = static_cast<int>(get_long(node, "degree"));
  if (node.contains("values"))
    for (const auto& v : node.at("values")) {
      const std::string t = value_text(v);
      k = std::max(k, static_cast<int>(std::count(t.begin(), t.end(), ',')) + 1);
    }
  if (k < 1 || k > 12) throw ValidationError("rep file: field degree out of range");
  const auto F = FiniteField::get(p, k);
  if (node.contains("quadratic")) {
    const long q = get_long(node, "quadratic");
    if (q < 3 || !is_probable_prime(Integer(q))) throw ValidationError("rep file: quadratic needs an odd prime");
    return DirichletChar::quadratic(F, static_cast<std::uint64_t>(q));
  }
  if (!node.contains("modulus")) return DirichletChar::trivial(F, 1);
  const long M = get_long(node, "modulus");
  if (M < 1) throw ValidationError("rep file: modulus must be positive");
  if (M % static_cast<long>(p) == 0) throw ValidationError("rep file: character modulus must be prime to p");
  std::vector<FFElem> vals;
  if (node.contains("values"))
    for (const auto& v : node.at("values")) vals.push_back(parse_ff(F, value_text(v)));
  return DirichletChar::from_generators(F, static_cast<std::uint64_t>(M), vals);
}

std::map<std::uint64_t, std::vector<LocalStep>> parse_local(const json& node) {
  std::map<std::uint64_t, std::vector<LocalStep>> out;
  if (!node.contains("local_data")) return out;
  for (const auto& blk : node.at("local_data")) {
    const long q = get_long(blk, "q");
    if (q < 2 || !is_probable_prime(Integer(q))) throw ValidationError("rep file: local_data q must be prime");
    std::vector<LocalStep> steps;
    for (const auto& st : need(blk, "steps")) {
      if (!st.is_array() || st.size() != 2 || !st[0].is_number_integer() || !st[1].is_number_integer())
        throw ValidationError("rep file: local_data steps are [order, fixed_dim] pairs");
      steps.push_back({st[0].get<int>(), st[1].get<int>()});
    }
    out[static_cast<std::uint64_t>(q)] = steps;
  }
  return out;
}

RepPtr build(const json& node, const std::string& base) {
  if (!node.is_object()) throw ValidationError("rep file: expected an object");
  const std::string type = need(node, "type").get<std::string>();
  if (type != "opaque" && node.contains("local_data"))
    throw ValidationError("rep file: local_data is only read on opaque atoms");
  if (type == "char") return GaloisRep::character(get_prime(node), node.value("j", 0L), parse_char(node, get_prime(node)));
  if (type == "dihedral") return GaloisRep::dihedral_rep(get_prime(node), static_cast<int>(node.value("m", 1L)));
  if (type == "a4hat") {
    const A4Lift lift = node.value("lift", std::string("e3")) == "e6" ? A4Lift::e6 : A4Lift::e3;
    if (node.contains("data")) {
      std::filesystem::path path(need(node, "data").get<std::string>());
      if (path.is_relative()) path = std::filesystem::path(base) / path;
      const auto ds = read_a4_dataset(path.string());
      if (node.contains("p") && get_prime(node) != ds.p) throw ValidationError("rep file: p disagrees with the quartic datafile");
      return GaloisRep::a4hat(a4_atom(ds, decide_real_or_complex(ds)), lift);
    }
    A4Atom a;
    a.p = get_prime(node);
    a.realquad = static_cast<int>(get_long(node, "realquad"));
    return GaloisRep::a4hat(a, lift);
  }
  if (type == "opaque") {
    std::vector<long> exps;
    for (const auto& e : need(node, "exponents")) exps.push_back(e.get<long>());
    return GaloisRep::opaque(get_prime(node), node.value("label", std::string("opaque")), exps,
                             static_cast<int>(node.value("frob_inf", 1L)), parse_local(node));
  }
  if (type == "twist") return GaloisRep::twist(build(need(node, "rep"), base), get_long(node, "j"));
  if (type == "symsq") return GaloisRep::sym_square(build(need(node, "rep"), base));
  if (type == "contragredient") return GaloisRep::contragredient(build(need(node, "rep"), base));
  if (type == "dsum") {
    std::vector<RepPtr> parts;
    for (const auto& c : need(node, "parts")) parts.push_back(build(c, base));
    if (parts.empty()) throw ValidationError("rep file: empty direct sum");
    for (const auto& r : parts)
      if (r->p() != parts[0]->p()) throw ValidationError("rep file: direct summands over different p");
    return GaloisRep::direct_sum(parts);
  }
  throw ValidationError("rep file: unknown type '" + type + "'");
}

}  // namespace

RepPtr parse_rep(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("rep file: ") + e.what());
  }
  try {
    return build(doc, base_dir);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("rep file: ") + e.what());
  }
}

RepPtr read_rep(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rep(ss.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace galhecke
