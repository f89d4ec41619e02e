#include "aec/languages.hpp"

#include <stdexcept>

namespace aec {

int lj_successor(int i, int j) {
    if (j < 1 || i < 1 || i > j) throw std::invalid_argument("lj_successor: index out of range");
    return (i % j) + 1;
}

bool lang_lbb_member(const Word& w) {
    bool seen_bb = false;
    int prev = -1;
    for (int s : w) {
        if (s == 1 && prev == 1) seen_bb = true;
        prev = s;
    }
    return seen_bb && prev == 1;
}

bool lang_li_member(const Word& w) {
    return !w.empty();
}

bool lang_lj_member(int j, const Word& w) {
    if (j < 1) throw std::invalid_argument("lang_lj_member: j must be >= 1");
    if (j == 1) return lang_li_member(w);
    if (w.size() < 2) return false;
    int i = w[w.size() - 2] + 1;
    int last = w[w.size() - 1] + 1;
    return last == lj_successor(i, j);
}

} // namespace aec
