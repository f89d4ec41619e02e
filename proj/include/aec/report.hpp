// report.hpp -- deterministic numeric formatting and machine-readable report
// assembly for the CLI.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aec/dfa.hpp"
#include "aec/energy.hpp"

namespace aec {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed 12 decimal places; the data-stream format for bits, rates and
// probabilities.
std::string format_fixed12(double value);

// 12 significant digits, scientific; used for joule-scale values.
std::string format_sci12(double value);

// Nearest fraction with denominator <= max_den when it matches within tol,
// via continued fractions.
std::optional<std::pair<long long, long long>> as_fraction(double value,
                                                           long long max_den = 10000,
                                                           double tol = 1e-12);

// "p/q ~= 0.666666666667" when a fraction certifies, else the plain decimal.
std::string format_probability(double value);

// fnv1a64 of the canonical serialization, in hex.
std::string dfa_fingerprint(const Dfa& d);

// CSV with header "n,bits,witness"; witness_limit bounds the exact
// witness-search length (rows beyond it fall back to float tie-breaking).
std::string energy_profile_csv(const Dfa& d, const EnergyCurve& curve);

// The JSON form of the same report: kind, tool version, fingerprint,
// parameters, and rows with 12-decimal strings.
std::string energy_profile_json(const Dfa& d, const EnergyCurve& curve);

std::string csv_escape(const std::string& field);

} // namespace aec
