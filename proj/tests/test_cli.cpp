#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aec/cli.hpp"
#include "aec/dfa_io.hpp"
#include "aec/qfa_io.hpp"
#include "aec/qfa.hpp"
#include "aec/transforms.hpp"

using namespace aec;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// scratch directory shared by the process; unique names per call site
fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "aec_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    return p.string();
}

} // namespace

TEST_CASE("energy profile emits the golden csv") {
    const std::string path = write_fixture("fig1.dfa", serialize_dfa(gen_lbb()));
    const Run r = cli({"energy", "profile", path, "--max-len", "3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "n,bits,witness\n"
          "0,0.000000000000,\n"
          "1,1.000000000000,a\n"
          "2,2.000000000000,aa\n"
          "3,3.169925001442,bbb\n");
}

TEST_CASE("energy profile json carries fingerprint and version") {
    const std::string path = write_fixture("fig1.dfa", serialize_dfa(gen_lbb()));
    const Run r = cli({"energy", "profile", path, "--max-len", "2", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"kind\": \"energy-curve\"") != std::string::npos);
    CHECK(r.out.find("\"machine_fingerprint\"") != std::string::npos);
    CHECK(r.out.find("\"tool_version\": \"0.1.0\"") != std::string::npos);
}

TEST_CASE("energy rate prints twelve decimals") {
    const std::string path = write_fixture("fig1.dfa", serialize_dfa(gen_lbb()));
    const Run r = cli({"energy", "rate", path});
    CHECK(r.code == 0);
    CHECK(r.out == "1.584962500721\n");
}

TEST_CASE("energy expected and margin") {
    const std::string path = write_fixture("fig1.dfa", serialize_dfa(gen_lbb()));
    const Run r = cli({"energy", "expected", path});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "chi: 1.292481250361\n"
          "psi: 1.000000000000\n");

    const Run m = cli({"energy", "margin", path});
    CHECK(m.code == 0);
    CHECK(m.out == "0.292481250361\n");

    const Run t = cli({"energy", "expected", path, "--temperature", "300"});
    CHECK(t.code == 0);
    CHECK(t.out.find("chi_joules_per_step: ") != std::string::npos);
    CHECK(t.out.find("e-21") != std::string::npos);
}

TEST_CASE("qfa sim certifies small rationals") {
    const std::string m2 = write_fixture("m2.qfa", serialize_qfa_json(gen_m2()));
    const Run r = cli({"qfa", "sim", m2, "--word", "s1 s2"});
    CHECK(r.code == 0);
    CHECK(r.out == "2/3 \xe2\x89\x88 0.666666666667\n");

    const Run e = cli({"qfa", "sim", m2, "--word", ""});
    CHECK(e.code == 0);
    CHECK(e.out == "1/3 \xe2\x89\x88 0.333333333333\n");
}

TEST_CASE("rebalance then equiv round-trips with exit code zero") {
    const std::string in = write_fixture("star.dfa", serialize_dfa([] {
        Dfa d;
        d.alphabet = Alphabet::letters(2);
        d.state_count = 5;
        d.start = 1;
        d.accepting = {1, 0, 0, 0, 0};
        d.delta.assign(10, 0);
        for (int q = 0; q < 5; ++q) d.delta[static_cast<std::size_t>(q) * 2] = (q + 1) % 5;
        return d;
    }()));
    const std::string out = (scratch() / "star_rebalanced.dfa").string();
    const Run r1 = cli({"dfa", "rebalance", in, "-o", out});
    CHECK(r1.code == 0);
    const Run r2 = cli({"dfa", "equiv", in, out});
    CHECK(r2.code == 0);
    CHECK(r2.out == "equivalent\n");
}

TEST_CASE("equiv reports the least counterexample and exits one") {
    const std::string a = write_fixture("lbb.dfa", serialize_dfa(gen_lbb()));
    Dfa other = gen_lbb();
    other.accepting = {0, 0, 0, 1};
    const std::string b = write_fixture("lbb_alt.dfa", serialize_dfa(other));
    const Run r = cli({"dfa", "equiv", a, b});
    CHECK(r.code == 1);
    CHECK(r.out == "not equivalent: counterexample \"bb\"\n");
}

TEST_CASE("qfa extract fails loudly on bounded-error machines") {
    const std::string m2 = write_fixture("m2.qfa", serialize_qfa_json(gen_m2()));
    const Run r = cli({"qfa", "extract", m2});
    CHECK(r.code == 1);
    CHECK(r.err.find("not zero-error") != std::string::npos);
}

TEST_CASE("qfa extract round-trips a from-dfa machine") {
    const std::string dfa_path = write_fixture("lbb2.dfa", serialize_dfa(gen_lbb()));
    const std::string qfa_path = (scratch() / "lbb.qfa").string();
    CHECK(cli({"qfa", "from-dfa", dfa_path, "-o", qfa_path}).code == 0);
    const Run r = cli({"qfa", "extract", qfa_path});
    CHECK(r.code == 0);
    CHECK(cli({"dfa", "equiv", dfa_path, write_fixture("extracted.dfa", r.out)}).code == 0);
}

TEST_CASE("qfa zero-error verdicts") {
    const std::string qfa_path = (scratch() / "lbb3.qfa").string();
    const std::string dfa_path = write_fixture("lbb3.dfa", serialize_dfa(gen_lbb()));
    CHECK(cli({"qfa", "from-dfa", dfa_path, "-o", qfa_path}).code == 0);
    const Run ok = cli({"qfa", "zero-error", qfa_path, "--max-len", "5"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "zero-error for all words up to length 5\n");

    const std::string m2 = write_fixture("m2b.qfa", serialize_qfa_json(gen_m2()));
    const Run bad = cli({"qfa", "zero-error", m2, "--max-len", "2"});
    CHECK(bad.code == 1);
    CHECK(bad.out == "not zero-error: witness \"\" accept probability 0.333333333333\n");
}

TEST_CASE("qfa max-error against the family predicates") {
    const std::string m2 = write_fixture("m2c.qfa", serialize_qfa_json(gen_m2()));
    const Run r = cli({"qfa", "max-error", m2, "--lang", "lj", "--j", "2", "--max-len", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "1/3 \xe2\x89\x88 0.333333333333\n");
}

TEST_CASE("oracle thm5 reports the attained bound") {
    const Run r = cli({"oracle", "thm5", "--j", "1", "--max-states", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "min inflow = 2 (bound j+1=2 attained; verified for \xe2\x89\xa4"
                   "5 states)\n");
}

TEST_CASE("oracle thm5 reports vacuous bounds honestly") {
    const Run r = cli({"oracle", "thm5", "--j", "2", "--max-states", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("holds vacuously") != std::string::npos);
}

TEST_CASE("oracle energy and mc") {
    const std::string path = write_fixture("fig1b.dfa", serialize_dfa(gen_lbb()));
    const Run r = cli({"oracle", "energy", path, "--len", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "3.169925001442\n");

    const Run mc1 = cli({"oracle", "mc", path, "--len", "200", "--samples", "10",
                         "--seed", "7"});
    const Run mc2 = cli({"oracle", "mc", path, "--len", "200", "--samples", "10",
                         "--seed", "7"});
    CHECK(mc1.code == 0);
    CHECK(mc1.out == mc2.out);
    CHECK(mc1.out.find("mean: ") == 0);
}

TEST_CASE("oracle reversible search") {
    const std::string parity = write_fixture("parity.dfa",
                                             "alphabet: a\nstates: 2\nstart: 0\naccept: 1\n"
                                             "trans: 0 a 1\ntrans: 1 a 0\n");
    const Run found = cli({"oracle", "reversible", parity, "--max-states", "3"});
    CHECK(found.code == 0);
    CHECK(found.out.find("states: 2") != std::string::npos);

    const std::string lbb = write_fixture("lbb4.dfa", serialize_dfa(gen_lbb()));
    const Run absent = cli({"oracle", "reversible", lbb, "--max-states", "3"});
    CHECK(absent.code == 0);
    CHECK(absent.out == "no reversible recognizer with \xe2\x89\xa4"
                        "3 states\n");
}

TEST_CASE("gen subcommands emit parseable machines") {
    const Run lbb = cli({"gen", "lbb"});
    CHECK(lbb.code == 0);
    CHECK(serialize_dfa(parse_dfa(lbb.out)) == lbb.out);

    const Run li = cli({"gen", "li", "--alphabet", "x", "y", "z"});
    CHECK(li.code == 0);
    CHECK(parse_dfa(li.out).alphabet.size() == 3);

    const Run lj = cli({"gen", "lj", "--j", "3"});
    CHECK(lj.code == 0);
    CHECK(parse_dfa(lj.out).state_count == 7);

    const Run mj = cli({"qfa", "gen-mj", "--j", "3"});
    CHECK(mj.code == 0);
    CHECK(parse_qfa_json(mj.out).n == 11);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"dfa"}).code == 2);
    CHECK(cli({"energy", "profile"}).code == 2);
    CHECK(cli({"qfa", "max-error", "x.qfa", "--lang", "nope", "--max-len", "3"}).code == 2);
}

TEST_CASE("missing files exit with code one") {
    const Run r = cli({"dfa", "validate", "/nonexistent/machine.dfa"});
    CHECK(r.code == 1);
    CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("file output is atomic") {
    const std::string src = write_fixture("fig1c.dfa", serialize_dfa(gen_lbb()));
    const fs::path target = scratch() / "atomic_out.dfa";
    fs::remove(target);
    CHECK(cli({"dfa", "canon", src, "-o", target.string()}).code == 0);
    CHECK(fs::exists(target));
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    // failure path: writing into a missing directory leaves nothing behind
    const std::string bad = (scratch() / "no_such_dir" / "out.dfa").string();
    const Run fail = cli({"dfa", "canon", src, "-o", bad});
    CHECK(fail.code == 1);
    CHECK_FALSE(fs::exists(bad));
}

TEST_CASE("data output is byte-deterministic") {
    const std::string path = write_fixture("fig1d.dfa", serialize_dfa(gen_lbb()));
    const Run a = cli({"qfa", "from-dfa", path});
    const Run b = cli({"qfa", "from-dfa", path});
    CHECK(a.out == b.out);
    CHECK(cli({"--version"}).out == "aec 0.1.0\n");
}
