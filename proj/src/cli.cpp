#include "aec/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "aec/dfa_io.hpp"
#include "aec/energy.hpp"
#include "aec/error.hpp"
#include "aec/languages.hpp"
#include "aec/oracles.hpp"
#include "aec/qfa.hpp"
#include "aec/qfa_io.hpp"
#include "aec/report.hpp"
#include "aec/transforms.hpp"

namespace aec {

namespace {

constexpr const char* kLeq = "\xe2\x89\xa4"; // U+2264 less-than-or-equal

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Data goes to stdout unless -o was given; files are written whole via a
// temporary and an atomic rename, so failures leave nothing behind.
void emit(const std::string& data, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << data;
        return;
    }
    const std::string tmp = out_path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ParseError("cannot open '" + tmp + "' for writing");
        f << data;
        if (!f.flush()) throw ParseError("write to '" + tmp + "' failed");
    }
    if (std::rename(tmp.c_str(), out_path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ParseError("cannot rename '" + tmp + "' to '" + out_path + "'");
    }
}

Dfa load_dfa(const std::string& path) { return parse_dfa(read_file(path)); }

Qfa load_qfa(const std::string& path) { return parse_qfa_json(read_file(path)); }

struct CliState {
    std::ostream& out;
    std::ostream& err;
    int verdict = 0; // set to 1 by negative verification verdicts
};

void add_output_option(CLI::App* cmd, std::string& out_path) {
    cmd->add_option("-o,--output", out_path, "write the result to this file (atomic)");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"energy complexity of regular languages: DFA/QFA analysis toolkit", "aec"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("aec ") + kToolVersion);
    app.fallthrough(false);

    CliState state{out, err};

    // shared option storage; only the parsed subcommand's callback reads it
    std::string in_path, in_path2, out_path, word_text, format = "csv", lang;
    int depth = 1, state_id = 0, cycle_m = 2, max_len = 0, max_states = 1, threads = 1;
    int j_param = 0, samples = 1, run_len = 1, verify_len = 6;
    std::uint64_t seed = 0, state_cap = 1000000;
    double temperature = 0.0;
    std::vector<std::string> alphabet_tokens;

    // ---- dfa ----
    CLI::App* dfa = app.add_subcommand("dfa", "operations on DFA text files");
    dfa->require_subcommand(1);
    {
        CLI::App* c = dfa->add_subcommand("validate", "parse and validate a DFA file");
        c->add_option("file", in_path, "DFA file")->required();
        c->callback([&] {
            const Dfa d = load_dfa(in_path);
            validate_dfa(d);
            state.out << "ok: " << d.state_count << " states, " << d.alphabet.size()
                      << " symbols, " << d.accepting_states().size() << " accepting\n";
        });
    }
    {
        CLI::App* c = dfa->add_subcommand("minimize", "minimal equivalent machine");
        c->add_option("file", in_path, "DFA file")->required();
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_dfa(minimize(load_dfa(in_path))), out_path, state.out); });
    }
    {
        CLI::App* c = dfa->add_subcommand("equiv", "language equivalence of two machines");
        c->add_option("a", in_path, "first DFA file")->required();
        c->add_option("b", in_path2, "second DFA file")->required();
        c->callback([&] {
            const Dfa a = load_dfa(in_path), b = load_dfa(in_path2);
            const EquivalenceResult r = equivalent(a, b);
            if (r.equivalent) {
                state.out << "equivalent\n";
            } else {
                state.out << "not equivalent: counterexample \""
                          << format_word(a.alphabet, *r.counterexample) << "\"\n";
                state.verdict = 1;
            }
        });
    }
    {
        CLI::App* c = dfa->add_subcommand("rebalance",
                                          "equivalent machine with in-degrees at most |alphabet|+1");
        c->add_option("file", in_path, "DFA file")->required();
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_dfa(rebalance(load_dfa(in_path))), out_path, state.out); });
    }
    {
        CLI::App* c = dfa->add_subcommand("expand", "tree expansion trading states for energy");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--depth", depth, "buffered window length k (>= 1)")->required();
        c->add_option("--state-cap", state_cap, "refuse outputs larger than this many states");
        add_output_option(c, out_path);
        c->callback([&] {
            emit(serialize_dfa(tree_expand(load_dfa(in_path), depth, state_cap)), out_path,
                 state.out);
        });
    }
    {
        CLI::App* c = dfa->add_subcommand("cycle-expand",
                                          "replace a total self-loop state by an m-cycle");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--state", state_id, "the self-loop state to expand")->required();
        c->add_option("--m", cycle_m, "cycle length (>= 2)")->required();
        add_output_option(c, out_path);
        c->callback([&] {
            emit(serialize_dfa(cycle_expand(load_dfa(in_path), state_id, cycle_m)), out_path,
                 state.out);
        });
    }
    {
        CLI::App* c = dfa->add_subcommand("canon", "BFS-canonical renumbering");
        c->add_option("file", in_path, "DFA file")->required();
        add_output_option(c, out_path);
        c->callback(
            [&] { emit(serialize_dfa(renumber_canonical(load_dfa(in_path))), out_path, state.out); });
    }

    // ---- energy ----
    CLI::App* energy = app.add_subcommand("energy", "energy accounting for DFAs");
    energy->require_subcommand(1);
    {
        CLI::App* c = energy->add_subcommand("profile", "worst-case curve E(0..N) with witnesses");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--max-len", max_len, "largest input length N")->required();
        c->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        add_output_option(c, out_path);
        c->callback([&] {
            const Dfa d = load_dfa(in_path);
            const EnergyCurve curve = energy_curve(d, max_len);
            emit(format == "csv" ? energy_profile_csv(d, curve) : energy_profile_json(d, curve),
                 out_path, state.out);
        });
    }
    {
        CLI::App* c = energy->add_subcommand("rate", "asymptotic bits per step, lim E(n)/n");
        c->add_option("file", in_path, "DFA file")->required();
        c->callback([&] { state.out << format_fixed12(energy_rate(load_dfa(in_path))) << "\n"; });
    }
    {
        CLI::App* c = energy->add_subcommand(
            "expected", "per-step expectation under the stationary distribution");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--temperature", temperature, "also convert to joules at this temperature");
        c->callback([&] {
            const Dfa d = load_dfa(in_path);
            const Distribution dist = stationary(d);
            const double chi_bits = expected_step_energy(d, dist, in_degree_profile(d));
            const double psi_bits = expected_step_energy(d, dist, restricted_profile(d, dist));
            state.out << "chi: " << format_fixed12(chi_bits) << "\n";
            state.out << "psi: " << format_fixed12(psi_bits) << "\n";
            if (temperature > 0.0) {
                state.out << "chi_joules_per_step: "
                          << format_sci12(bits_to_joules(chi_bits, temperature)) << "\n";
                state.out << "psi_joules_per_step: "
                          << format_sci12(bits_to_joules(psi_bits, temperature)) << "\n";
            }
        });
    }
    {
        CLI::App* c = energy->add_subcommand("margin", "lower-bound margin J over the chi >= psi gap");
        c->add_option("file", in_path, "DFA file")->required();
        c->callback(
            [&] { state.out << format_fixed12(lower_bound_margin(load_dfa(in_path))) << "\n"; });
    }

    // ---- qfa ----
    CLI::App* qfa = app.add_subcommand("qfa", "quantum finite automata");
    qfa->require_subcommand(1);
    {
        CLI::App* c = qfa->add_subcommand("validate", "structural and completeness checks");
        c->add_option("file", in_path, "QFA JSON file")->required();
        c->callback([&] {
            const Qfa m = load_qfa(in_path);
            validate_qfa(m);
            state.out << "ok: " << m.n << " states, " << m.alphabet.size() << " symbols, l="
                      << m.element_count() << "\n";
        });
    }
    {
        CLI::App* c = qfa->add_subcommand("sim", "acceptance probability of a word");
        c->add_option("file", in_path, "QFA JSON file")->required();
        c->add_option("--word", word_text, "input word (token or character form)")->required();
        c->callback([&] {
            const Qfa m = load_qfa(in_path);
            validate_qfa(m);
            state.out << format_probability(accept_prob(m, parse_word(m.alphabet, word_text)))
                      << "\n";
        });
    }
    {
        CLI::App* c = qfa->add_subcommand("from-dfa", "zero-error QFA simulating a DFA");
        c->add_option("file", in_path, "DFA file")->required();
        add_output_option(c, out_path);
        c->callback(
            [&] { emit(serialize_qfa_json(from_dfa(load_dfa(in_path))), out_path, state.out); });
    }
    {
        CLI::App* c = qfa->add_subcommand("extract", "DFA from a zero-error QFA");
        c->add_option("file", in_path, "QFA JSON file")->required();
        c->add_option("--verify-len", verify_len, "cross-check words up to this length");
        add_output_option(c, out_path);
        c->callback([&] {
            ExtractOptions options;
            options.verify_len = verify_len;
            emit(serialize_dfa(extract_dfa(load_qfa(in_path), options)), out_path, state.out);
        });
    }
    {
        CLI::App* c = qfa->add_subcommand("zero-error", "check acceptance is always 0 or 1");
        c->add_option("file", in_path, "QFA JSON file")->required();
        c->add_option("--max-len", max_len, "check words up to this length")->required();
        c->callback([&] {
            const Qfa m = load_qfa(in_path);
            validate_qfa(m);
            const ZeroErrorResult r = is_zero_error(m, max_len);
            if (r.zero_error) {
                state.out << "zero-error for all words up to length " << max_len << "\n";
            } else {
                state.out << "not zero-error: witness \"" << format_word(m.alphabet, *r.witness)
                          << "\" accept probability "
                          << format_fixed12(accept_prob(m, *r.witness)) << "\n";
                state.verdict = 1;
            }
        });
    }
    {
        CLI::App* c = qfa->add_subcommand("max-error", "worst error against a language family");
        c->add_option("file", in_path, "QFA JSON file")->required();
        c->add_option("--lang", lang, "lbb, li, or lj (lj needs --j)")
            ->required()
            ->check(CLI::IsMember({"lbb", "li", "lj"}));
        c->add_option("--j", j_param, "family index for lj");
        c->add_option("--max-len", max_len, "check words up to this length")->required();
        c->callback([&] {
            const Qfa m = load_qfa(in_path);
            validate_qfa(m);
            std::function<bool(const Word&)> member;
            if (lang == "lbb") {
                if (m.alphabet.size() != 2)
                    throw ValidationError("lbb expects a 2-symbol alphabet");
                member = lang_lbb_member;
            } else if (lang == "li") {
                member = lang_li_member;
            } else {
                if (j_param < 1) throw ValidationError("--lang lj requires --j >= 1");
                if (m.alphabet.size() != j_param)
                    throw ValidationError("lj expects a " + std::to_string(j_param) +
                                          "-symbol alphabet");
                member = [&](const Word& w) { return lang_lj_member(j_param, w); };
            }
            state.out << format_probability(max_error(m, member, max_len)) << "\n";
        });
    }
    {
        CLI::App* c = qfa->add_subcommand("gen-m2", "the two-element bounded-error machine for L_2");
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_qfa_json(gen_m2()), out_path, state.out); });
    }
    {
        CLI::App* c = qfa->add_subcommand("gen-mj", "the three-element bounded-error machine for L_j");
        c->add_option("--j", j_param, "family index (>= 3)")->required();
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_qfa_json(gen_mj(j_param)), out_path, state.out); });
    }

    // ---- gen ----
    CLI::App* gen = app.add_subcommand("gen", "DFA generators for the studied languages");
    gen->require_subcommand(1);
    {
        CLI::App* c = gen->add_subcommand("lbb", "contains bb and ends with b");
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_dfa(gen_lbb()), out_path, state.out); });
    }
    {
        CLI::App* c = gen->add_subcommand("li", "all non-empty words");
        c->add_option("--alphabet", alphabet_tokens, "alphabet symbols")
            ->required()
            ->expected(-1);
        add_output_option(c, out_path);
        c->callback(
            [&] { emit(serialize_dfa(gen_li(Alphabet(alphabet_tokens))), out_path, state.out); });
    }
    {
        CLI::App* c = gen->add_subcommand("lj", "words ending with s_i s_F(i)");
        c->add_option("--j", j_param, "family index (>= 1)")->required();
        add_output_option(c, out_path);
        c->callback([&] { emit(serialize_dfa(gen_lj(j_param)), out_path, state.out); });
    }

    // ---- oracle ----
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force ground-truth checks");
    oracle->require_subcommand(1);
    {
        CLI::App* c = oracle->add_subcommand(
            "thm5", "minimum same-symbol inflow over all small recognizers of L_j");
        c->add_option("--j", j_param, "family index (>= 1)")->required();
        c->add_option("--max-states", max_states, "enumerate recognizers up to this size")
            ->required();
        c->add_option("--threads", threads, "partition the search deterministically");
        c->callback([&] {
            const Dfa target = gen_lj(j_param);
            const int bound = j_param + 1;
            const auto r = min_inflow_over_recognizers(target, max_states, threads);
            if (!r) {
                state.out << "no recognizer with " << kLeq << max_states
                          << " states exists; bound j+1=" << bound
                          << " holds vacuously (verified for " << kLeq << max_states
                          << " states)\n";
            } else if (*r >= bound) {
                state.out << "min inflow = " << *r << " (bound j+1=" << bound
                          << " attained; verified for " << kLeq << max_states << " states)\n";
            } else {
                state.out << "THEOREM VIOLATION: min inflow = " << *r << " < " << bound
                          << " (verified for " << kLeq << max_states << " states)\n";
                state.verdict = 1;
            }
        });
    }
    {
        CLI::App* c = oracle->add_subcommand("energy", "exhaustive E(n) over all words");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--len", run_len, "word length n")->required();
        c->callback([&] {
            state.out << format_fixed12(brute_force_energy(load_dfa(in_path), run_len)) << "\n";
        });
    }
    {
        CLI::App* c = oracle->add_subcommand("reversible",
                                             "search for an equivalent in-degree-1 machine");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--max-states", max_states, "enumerate machines up to this size")
            ->required();
        c->add_option("--threads", threads, "partition the search deterministically");
        c->callback([&] {
            const auto r = find_reversible_recognizer(load_dfa(in_path), max_states, threads);
            if (r) {
                emit(serialize_dfa(*r), out_path, state.out);
            } else {
                state.out << "no reversible recognizer with " << kLeq << max_states
                          << " states\n";
            }
        });
        add_output_option(c, out_path);
    }
    {
        CLI::App* c = oracle->add_subcommand("mc", "Monte Carlo mean bits per step");
        c->add_option("file", in_path, "DFA file")->required();
        c->add_option("--len", run_len, "word length")->required();
        c->add_option("--samples", samples, "number of sampled words")->required();
        c->add_option("--seed", seed, "SplitMix64 seed")->required();
        c->callback([&] {
            const MonteCarloResult r =
                monte_carlo_step_energy(load_dfa(in_path), run_len, samples, seed);
            state.out << "mean: " << format_fixed12(r.mean_bits_per_step) << "\n";
            state.out << "stderr: " << format_fixed12(r.std_error) << "\n";
        });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return state.verdict;
}

} // namespace aec
