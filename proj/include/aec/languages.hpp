// languages.hpp -- direct membership predicates for the studied language
// families.  These are written from the language definitions, independent of
// the DFA generators, so the two can be tested against each other.

#pragma once

#include "aec/alphabet.hpp"

namespace aec {

// Successor index on {1..j}: F(i) = (i mod j) + 1.
int lj_successor(int i, int j);

// L over {a, b}: contains the substring bb and ends with b.
// Word symbols: 0 = a, 1 = b.
bool lang_lbb_member(const Word& w);

// L_I: all non-empty words.
bool lang_li_member(const Word& w);

// L_j over {s1..sj}: ends with s_i s_{F(i)} for some i.  Word symbols are
// 0-based (symbol t means s_{t+1}).  For j = 1 this degenerates to L_I.
bool lang_lj_member(int j, const Word& w);

} // namespace aec
