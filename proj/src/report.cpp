#include "aec/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "aec/dfa_io.hpp"
#include "aec/hash.hpp"

namespace aec {

std::string format_fixed12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12f", value);
    return buf;
}

std::string format_sci12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", value);
    return buf;
}

std::optional<std::pair<long long, long long>> as_fraction(double value, long long max_den,
                                                           double tol) {
    if (!std::isfinite(value) || value < 0.0) return std::nullopt;
    // continued-fraction convergents of value
    long long p0 = 1, q0 = 0, p1 = 0, q1 = 1; // p0/q0 = previous, p1/q1 = current
    double x = value;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(x);
        if (fl > 9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p0 + p1;
        long long q2 = a * q0 + q1;
        if (q2 > max_den || q2 < 0) break;
        p1 = p0;
        q1 = q0;
        p0 = p2;
        q0 = q2;
        if (q0 > 0 && std::abs(value - static_cast<double>(p0) / q0) <= tol)
            return std::make_pair(p0, q0);
        double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

std::string format_probability(double value) {
    auto frac = as_fraction(value);
    if (frac && frac->second > 1) {
        return std::to_string(frac->first) + "/" + std::to_string(frac->second) +
               " \xe2\x89\x88 " + format_fixed12(value); // U+2248 almost-equal sign
    }
    return format_fixed12(value);
}

std::string dfa_fingerprint(const Dfa& d) {
    return to_hex(fnv1a64(serialize_dfa(d)));
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string energy_profile_csv(const Dfa& d, const EnergyCurve& curve) {
    std::string out = "n,bits,witness\n";
    for (int n = 0; n <= curve.n_max; ++n) {
        const Word witness = energy_witness(d, n);
        out += std::to_string(n);
        out += ',';
        out += format_fixed12(curve.values[n]);
        out += ',';
        out += csv_escape(format_word(d.alphabet, witness));
        out += '\n';
    }
    return out;
}

std::string energy_profile_json(const Dfa& d, const EnergyCurve& curve) {
    nlohmann::json j;
    j["kind"] = "energy-curve";
    j["tool_version"] = kToolVersion;
    j["machine_fingerprint"] = dfa_fingerprint(d);
    j["parameters"] = {{"max_len", curve.n_max}};
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n <= curve.n_max; ++n) {
        rows.push_back({{"n", n},
                        {"bits", format_fixed12(curve.values[n])},
                        {"witness", format_word(d.alphabet, energy_witness(d, n))}});
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

} // namespace aec
