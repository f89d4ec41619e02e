// qfa_io.hpp -- the QFA JSON format.
//
//   { "n": 10, "alphabet": ["s1", "s2"], "start": 0, "accept": [3, 7, 9],
//     "superoperators": { "^": [elem, ...], "s1": [...], "s2": [...] } }
//
// Each element is an n x n row-major array of [re, im] pairs; entry [i][j] is
// the amplitude from source state j to target state i.  Every alphabet symbol
// plus "^" must be present with identical element counts.

#pragma once

#include <string>

#include "aec/qfa.hpp"

namespace aec {

Qfa parse_qfa_json(const std::string& text);
std::string serialize_qfa_json(const Qfa& m);

} // namespace aec
