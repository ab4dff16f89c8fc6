#pragma once

#include <string>

#include "galhecke/galrep/galois_rep.hpp"

namespace galhecke {

// Representation spec files are JSON objects with a "type" key:
//   {"type": "char", "p": 13, "j": 3, "modulus": 5, "values": ["2"], "degree": 1}
//     ("quadratic": q instead of modulus/values gives the Legendre symbol)
//   {"type": "dihedral", "p": 229, "m": 1}
//   {"type": "a4hat", "data": "a4_p277.txt"}          quartic datafile, run through the pipeline
//   {"type": "a4hat", "p": 163, "realquad": -1}        local invariants only
//     (optional "lift": "e6")
//   {"type": "opaque", "p": 3, "label": "...", "exponents": [0, 0], "frob_inf": 1,
//    "local_data": [{"q": 277, "steps": [[3, 1]]}]}
//   {"type": "twist", "j": -92, "rep": {...}}
//   {"type": "dsum", "parts": [{...}, ...]}
//   {"type": "symsq", "rep": {...}}, {"type": "contragredient", "rep": {...}}
// Relative paths are resolved against base_dir. Comments are allowed.
RepPtr parse_rep(const std::string& text, const std::string& base_dir = ".");
RepPtr read_rep(const std::string& path);

}  // namespace galhecke
