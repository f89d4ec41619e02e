#include "aec/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "aec/error.hpp"

namespace aec {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw ParseError("alphabet must not be empty");
    std::unordered_set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw ParseError("alphabet symbol must not be empty");
        if (s == kEndmarker) throw ParseError("alphabet symbol '^' is reserved for the endmarker");
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c)))
                throw ParseError("alphabet symbol '" + s + "' contains whitespace");
        }
        if (!seen.insert(s).second) throw ParseError("duplicate alphabet symbol '" + s + "'");
    }
}

int Alphabet::index_of(const std::string& token) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), token);
    if (it == symbols_.end()) return -1;
    return static_cast<int>(it - symbols_.begin());
}

int Alphabet::index_of_checked(const std::string& token) const {
    int i = index_of(token);
    if (i < 0) throw ParseError("unknown symbol '" + token + "'");
    return i;
}

bool Alphabet::all_single_char() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
}

Alphabet Alphabet::letters(int k) {
    if (k < 1 || k > 26) throw ParseError("letters alphabet supports 1..26 symbols");
    std::vector<std::string> syms;
    for (int i = 0; i < k; ++i) syms.push_back(std::string(1, static_cast<char>('a' + i)));
    return Alphabet(std::move(syms));
}

Alphabet Alphabet::indexed(int j) {
    if (j < 1) throw ParseError("indexed alphabet needs j >= 1");
    std::vector<std::string> syms;
    for (int i = 1; i <= j; ++i) syms.push_back("s" + std::to_string(i));
    return Alphabet(std::move(syms));
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
    Word word;
    if (text.empty()) return word;
    const bool has_space = std::any_of(text.begin(), text.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
    });
    if (has_space || !alphabet.all_single_char()) {
        std::istringstream in(text);
        std::string token;
        while (in >> token) word.push_back(alphabet.index_of_checked(token));
    } else {
        for (char c : text) word.push_back(alphabet.index_of_checked(std::string(1, c)));
    }
    return word;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    const bool compact = alphabet.all_single_char();
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += alphabet.symbol(word[i]);
    }
    return out;
}

} // namespace aec
