// alphabet.hpp -- input alphabets and words over them.

#pragma once

#include <string>
#include <vector>

namespace aec {

// The endmarker token is reserved for QFAs and may never appear in an alphabet.
inline constexpr const char* kEndmarker = "^";

// An ordered list of distinct, non-empty, whitespace-free symbol tokens.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols); // throws ParseError on invalid tokens

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& symbols() const { return symbols_; }

    // Index of a token, or -1 when unknown.
    int index_of(const std::string& token) const;
    // Index of a token; throws ParseError when unknown.
    int index_of_checked(const std::string& token) const;

    bool all_single_char() const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

    // {"a", "b", "c", ...} truncated to k symbols (k <= 26).
    static Alphabet letters(int k);
    // {"s1", ..., "sj"}, the paper-family alphabet.
    static Alphabet indexed(int j);

private:
    std::vector<std::string> symbols_;
};

// A word is a sequence of symbol indices into some alphabet.
using Word = std::vector<int>;

// Parses a word from text: whitespace-separated tokens, or one character per
// symbol when every alphabet symbol is a single character and the text holds
// no whitespace.  Empty text is the empty word.
Word parse_word(const Alphabet& alphabet, const std::string& text);

// Inverse of parse_word: concatenated for single-char alphabets, else
// space-joined tokens.
std::string format_word(const Alphabet& alphabet, const Word& word);

} // namespace aec
