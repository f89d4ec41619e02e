// dfa_io.hpp -- the line-based DFA text format.
//
//   alphabet: a b
//   states: 4
//   start: 0
//   accept: 2
//   trans: 0 a 0
//   ...exactly states x |alphabet| trans lines
//
// '#' starts a comment; tokens are whitespace-delimited; state names are
// 0-based integers.

#pragma once

#include <string>

#include "aec/dfa.hpp"

namespace aec {

Dfa parse_dfa(const std::string& text);

// Canonical ordering (states ascending, symbols in alphabet order); acts as
// the inverse of parse_dfa and is byte-deterministic.
std::string serialize_dfa(const Dfa& d);

} // namespace aec
