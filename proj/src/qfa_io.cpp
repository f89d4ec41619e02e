#include "aec/qfa_io.hpp"

#include <json.hpp>

#include "aec/error.hpp"

namespace aec {

using nlohmann::json;

namespace {

ComplexMatrix parse_element(const json& j, int n, const std::string& symbol) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
        throw ParseError("qfa json: element of '" + symbol + "' is not " + std::to_string(n) +
                         " rows");
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
            throw ParseError("qfa json: row of '" + symbol + "' is not " + std::to_string(n) +
                             " entries");
        for (int col = 0; col < n; ++col) {
            const json& cell = row[col];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw ParseError("qfa json: entry of '" + symbol + "' is not an [re, im] pair");
            m.at(i, col) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

Superoperator parse_superoperator(const json& j, int n, const std::string& symbol) {
    if (!j.is_array() || j.empty())
        throw ParseError("qfa json: superoperator for '" + symbol +
                         "' must be a non-empty element array");
    Superoperator op;
    for (const json& e : j) op.elements.push_back(parse_element(e, n, symbol));
    return op;
}

json element_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j)
            row.push_back(json::array({m.at(i, j).real(), m.at(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

Qfa parse_qfa_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("qfa json: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("qfa json: top level must be an object");
    for (const char* key : {"n", "alphabet", "start", "accept", "superoperators"})
        if (!j.contains(key)) throw ParseError(std::string("qfa json: missing key '") + key + "'");

    Qfa m;
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw ParseError("qfa json: 'n' must be a positive integer");
    m.n = j["n"].get<int>();

    if (!j["alphabet"].is_array()) throw ParseError("qfa json: 'alphabet' must be an array");
    std::vector<std::string> symbols;
    for (const json& s : j["alphabet"]) {
        if (!s.is_string()) throw ParseError("qfa json: alphabet symbols must be strings");
        symbols.push_back(s.get<std::string>());
    }
    m.alphabet = Alphabet(std::move(symbols));

    if (!j["start"].is_number_integer()) throw ParseError("qfa json: 'start' must be an integer");
    m.start = j["start"].get<int>();
    if (m.start < 0 || m.start >= m.n) throw ParseError("qfa json: start state out of range");

    m.accepting.assign(m.n, 0);
    if (!j["accept"].is_array()) throw ParseError("qfa json: 'accept' must be an array");
    for (const json& q : j["accept"]) {
        if (!q.is_number_integer() || q.get<int>() < 0 || q.get<int>() >= m.n)
            throw ParseError("qfa json: accepting state out of range");
        m.accepting[q.get<int>()] = 1;
    }

    const json& ops = j["superoperators"];
    if (!ops.is_object()) throw ParseError("qfa json: 'superoperators' must be an object");
    if (!ops.contains(kEndmarker))
        throw ParseError("qfa json: missing endmarker superoperator '^'");
    m.endmarker_op = parse_superoperator(ops[kEndmarker], m.n, kEndmarker);
    m.symbol_ops.resize(m.alphabet.size());
    for (int s = 0; s < m.alphabet.size(); ++s) {
        const std::string& sym = m.alphabet.symbol(s);
        if (!ops.contains(sym))
            throw ParseError("qfa json: missing superoperator for symbol '" + sym + "'");
        m.symbol_ops[s] = parse_superoperator(ops[sym], m.n, sym);
    }
    for (const auto& [key, value] : ops.items()) {
        if (key != kEndmarker && m.alphabet.index_of(key) < 0)
            throw ParseError("qfa json: superoperator for unknown symbol '" + key + "'");
    }
    return m;
}

std::string serialize_qfa_json(const Qfa& m) {
    json j;
    j["n"] = m.n;
    j["alphabet"] = m.alphabet.symbols();
    j["start"] = m.start;
    json accept = json::array();
    for (int q = 0; q < m.n; ++q)
        if (m.accepting[q]) accept.push_back(q);
    j["accept"] = std::move(accept);

    json ops = json::object();
    json end_elements = json::array();
    for (const ComplexMatrix& e : m.endmarker_op.elements)
        end_elements.push_back(element_to_json(e));
    ops[kEndmarker] = std::move(end_elements);
    for (int s = 0; s < m.alphabet.size(); ++s) {
        json elements = json::array();
        for (const ComplexMatrix& e : m.symbol_ops[s].elements)
            elements.push_back(element_to_json(e));
        ops[m.alphabet.symbol(s)] = std::move(elements);
    }
    j["superoperators"] = std::move(ops);
    return j.dump(2) + "\n";
}

} // namespace aec
