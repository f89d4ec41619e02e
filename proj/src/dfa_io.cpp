#include "aec/dfa_io.hpp"

#include <array>
#include <sstream>
#include <vector>

#include "aec/error.hpp"

namespace aec {

namespace {

long parse_int(const std::string& token, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(token, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("invalid ") + what + " '" + token + "'");
    }
    if (pos != token.size() || v < 0)
        throw ParseError(std::string("invalid ") + what + " '" + token + "'");
    return v;
}

} // namespace

Dfa parse_dfa(const std::string& text) {
    std::vector<std::string> alphabet_tokens;
    bool have_alphabet = false, have_states = false, have_start = false, have_accept = false;
    long state_count = 0, start = 0;
    std::vector<long> accept_list;
    std::vector<std::array<std::string, 3>> trans_lines;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue; // blank line
        auto fail = [&](const std::string& msg) -> void {
            throw ParseError("line " + std::to_string(line_no) + ": " + msg);
        };
        if (key == "alphabet:") {
            if (have_alphabet) fail("duplicate alphabet line");
            have_alphabet = true;
            std::string tok;
            while (ls >> tok) alphabet_tokens.push_back(tok);
        } else if (key == "states:") {
            if (have_states) fail("duplicate states line");
            have_states = true;
            std::string tok;
            if (!(ls >> tok)) fail("missing state count");
            state_count = parse_int(tok, "state count");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after state count");
        } else if (key == "start:") {
            if (have_start) fail("duplicate start line");
            have_start = true;
            std::string tok;
            if (!(ls >> tok)) fail("missing start state");
            start = parse_int(tok, "start state");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after start state");
        } else if (key == "accept:") {
            if (have_accept) fail("duplicate accept line");
            have_accept = true;
            std::string tok;
            while (ls >> tok) accept_list.push_back(parse_int(tok, "accepting state"));
        } else if (key == "trans:") {
            std::string src, sym, dst;
            if (!(ls >> src >> sym >> dst)) fail("transition needs 'src symbol dst'");
            std::string extra;
            if (ls >> extra) fail("trailing tokens after transition");
            trans_lines.push_back({src, sym, dst});
        } else {
            fail("unknown key '" + key + "'");
        }
    }

    if (!have_alphabet) throw ParseError("missing alphabet line");
    if (!have_states) throw ParseError("missing states line");
    if (!have_start) throw ParseError("missing start line");
    if (!have_accept) throw ParseError("missing accept line");

    Dfa d;
    d.alphabet = Alphabet(alphabet_tokens); // rejects "^", duplicates, empties
    const int k = d.alphabet.size();
    if (state_count < 1) throw ParseError("state count must be positive");
    d.state_count = static_cast<int>(state_count);
    if (start >= state_count) throw ParseError("start state " + std::to_string(start) + " out of range");
    d.start = static_cast<int>(start);
    d.accepting.assign(d.state_count, 0);
    for (long q : accept_list) {
        if (q >= state_count)
            throw ParseError("accepting state " + std::to_string(q) + " out of range");
        d.accepting[static_cast<std::size_t>(q)] = 1;
    }

    d.delta.assign(static_cast<std::size_t>(d.state_count) * k, -1);
    for (const auto& [src_tok, sym_tok, dst_tok] : trans_lines) {
        long src = parse_int(src_tok, "state");
        long dst = parse_int(dst_tok, "state");
        if (src >= state_count) throw ParseError("unknown state " + std::to_string(src));
        if (dst >= state_count) throw ParseError("unknown state " + std::to_string(dst));
        int sym = d.alphabet.index_of(sym_tok);
        if (sym < 0) throw ParseError("unknown symbol '" + sym_tok + "'");
        int& cell = d.delta[static_cast<std::size_t>(src) * k + sym];
        if (cell >= 0)
            throw ParseError("duplicate transition (" + std::to_string(src) + ", " + sym_tok + ")");
        cell = static_cast<int>(dst);
    }
    for (int q = 0; q < d.state_count; ++q) {
        for (int s = 0; s < k; ++s) {
            if (d.delta[static_cast<std::size_t>(q) * k + s] < 0) {
                throw ParseError("non-total delta: missing transition (" + std::to_string(q) +
                                 ", " + d.alphabet.symbol(s) + ")");
            }
        }
    }
    return d;
}

std::string serialize_dfa(const Dfa& d) {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& s : d.alphabet.symbols()) out << ' ' << s;
    out << '\n';
    out << "states: " << d.state_count << '\n';
    out << "start: " << d.start << '\n';
    out << "accept:";
    for (int q : d.accepting_states()) out << ' ' << q;
    out << '\n';
    for (int q = 0; q < d.state_count; ++q)
        for (int s = 0; s < d.alphabet.size(); ++s)
            out << "trans: " << q << ' ' << d.alphabet.symbol(s) << ' ' << d.next(q, s) << '\n';
    return out.str();
}

} // namespace aec
