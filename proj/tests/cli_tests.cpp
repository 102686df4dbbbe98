// End-to-end checks of the qfilter binary: exit codes, report schemas,
// reproducibility, and the golden dilation exports.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QFILTER_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expect_code = 0) {
    const RunResult r = run_cli(args);
    CHECK(r.exit_code == expect_code);
    return json::parse(r.out);
}

json load_golden(const std::string& name) {
    std::ifstream f(std::string(GOLDEN_DIR) + "/" + name);
    REQUIRE(f.good());
    return json::parse(f);
}

double rel_close(double a, double b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("analyze reports the closed forms") {
    const json r = run_json("analyze --n 3 --k 2 --eta1 0.125");
    CHECK(r.at("schema") == 1);
    CHECK(rel_close(r.at("Qpovm"), std::sqrt(3.0) / 8) <= 1e-12);
    CHECK(rel_close(r.at("Q1"), 7.0 / 32) <= 1e-12);
    CHECK(rel_close(r.at("Q2"), 7.0 / 32) <= 1e-12);
    CHECK(r.at("chosen") == "POVM");
    CHECK(r.at("povm_valid") == true);
}

TEST_CASE("analyze sweep emits one record per grid point") {
    const json r = run_json("analyze --n 3 --k 2 --sweep 0.05:0.5:10");
    REQUIRE(r.at("sweep").size() == 10);
    CHECK(r.at("sweep")[0].at("eta1") == doctest::Approx(0.05));
    CHECK(r.at("sweep")[9].at("eta1") == doctest::Approx(0.5));
}

TEST_CASE("ensemble three-way agreement through the CLI") {
    const json r = run_json("ensemble --n 3 --k 2 --eta1 0.125");
    CHECK(rel_close(r.at("Sb_closed"), 0.09375) <= 1e-13);
    CHECK(rel_close(r.at("Sb_bruteforce"), 0.09375) <= 1e-13);
    CHECK(r.at("s0") == "70");
    CHECK(r.at("C").size() == 3);
}

TEST_CASE("classify and encode records") {
    const json c = run_json("classify --table 00000011");
    CHECK(c.at("class") == "biased");
    CHECK(c.at("m1") == 2);
    CHECK(c.at("wk").at("k") == 2);
    CHECK(c.at("wk").at("polarity") == 0);
    CHECK(c.at("table_hex") == "03");

    const json e = run_json("encode --n 3 --k 2");
    REQUIRE(e.at("amplitudes").size() == 8);
    CHECK(rel_close(e.at("amplitudes")[0], 1.0 / std::sqrt(8.0)) <= 1e-15);
    CHECK(rel_close(e.at("amplitudes")[7], -1.0 / std::sqrt(8.0)) <= 1e-15);

    const json viaHex = run_json("classify --table 0x03");
    CHECK(viaHex.at("table") == "00000011");
}

TEST_CASE("thresholds locate the regime switches") {
    const json r = run_json("thresholds --n 3 --k 2 --points 4000");
    CHECK(rel_close(r.at("zeta1"), 0.16) <= 1e-13);
    CHECK(rel_close(r.at("zeta2"), 3.0 / 31) <= 1e-13);
    const double step = r.at("step");
    CHECK(std::abs(double(r.at("switch_low")) - 3.0 / 31) <= step);
    CHECK(std::abs(double(r.at("switch_high")) - 0.16) <= step);
    REQUIRE(r.at("segments").size() == 3);
    CHECK(r.at("segments")[0].at("regime") == "VN1");
    CHECK(r.at("segments")[1].at("regime") == "POVM");
    CHECK(r.at("segments")[2].at("regime") == "VN2");
}

TEST_CASE("simulate is reproducible and unambiguous") {
    const std::string args = "simulate --n 3 --k 2 --eta1 0.125 --trials 20000 --seed 42";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);  // byte identical

    const json r = json::parse(a.out);
    CHECK(r.at("count_misidentified") == 0);
    CHECK(r.at("empirical_error_rate") == 0.0);
    const double q = r.at("analytic_Q");
    const double emp = r.at("empirical_Q");
    CHECK(std::abs(emp - q) <= 4 * std::sqrt(q * (1 - q) / 20000));
    CHECK(r.at("comparison").at("pass") == true);
}

TEST_CASE("synth output matches the golden dilations") {
    const struct {
        const char* q1;
        const char* file;
    } cases[] = {
        {"0.75", "dilation_n3_k2_q075.json"},
        {"0.8", "dilation_n3_k2_q080.json"},
        {"1.0", "dilation_n3_k2_q100.json"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.q1);
        const json got = run_json(std::string("synth --n 3 --k 2 --q1 ") + c.q1);
        const json want = load_golden(c.file);
        CHECK(got.at("dim") == want.at("dim"));
        REQUIRE(got.at("matrix").size() == want.at("matrix").size());
        for (std::size_t r = 0; r < want.at("matrix").size(); ++r)
            for (std::size_t s = 0; s < want.at("matrix")[r].size(); ++s)
                CHECK(rel_close(got.at("matrix")[r][s], want.at("matrix")[r][s]) <= 1e-10);
        for (std::size_t j = 0; j < want.at("q").size(); ++j)
            CHECK(rel_close(got.at("q")[j], want.at("q")[j]) <= 1e-10);
        CHECK(got.at("validation").at("pass") == true);
    }
}

TEST_CASE("file output is deterministic") {
    const std::string path_a = "/tmp/qfilter_test_a.json";
    const std::string path_b = "/tmp/qfilter_test_b.json";
    CHECK(run_cli("synth --n 3 --k 2 --q1 0.8 --out " + path_a).exit_code == 0);
    CHECK(run_cli("synth --n 3 --k 2 --q1 0.8 --out " + path_b).exit_code == 0);
    std::ifstream fa(path_a), fb(path_b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(!sa.str().empty());
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("ensemble audit rows in CSV form") {
    const RunResult r = run_cli("ensemble --n 3 --k 2 --eta1 0.125 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "m,C_m,overlap,contribution");
    std::getline(lines, line);
    CHECK(line == "0,15,0.5,0.046875");
    std::getline(lines, line);
    CHECK(line == "1,40,0,0");
    std::getline(lines, line);
    CHECK(line == "2,15,-0.5,0.046875");
}

TEST_CASE("basis export in CSV form") {
    const RunResult r = run_cli("basis --n 2 --format csv");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "p,j,x0,x1,x2,x3");
    std::getline(lines, line);
    CHECK(line == "0,1,0.5,0.5,0.5,0.5");
    std::getline(lines, line);
    CHECK(line == "1,1,0.5,0.5,-0.5,-0.5");
}

TEST_CASE("error paths use distinct exit codes and machine-readable objects") {
    SUBCASE("bad flags exit 2") {
        const RunResult r = run_cli("analyze --nonsense 3");
        CHECK(r.exit_code == 2);
        const json e = json::parse(r.out);
        CHECK(e.at("error").at("code") == 2);
        CHECK(e.at("error").at("kind") == "bad_args");
    }
    SUBCASE("out-of-range parameters exit 2") {
        const RunResult r = run_cli("analyze --n 3 --k 9 --eta1 0.1");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("infeasible q1 exits 3 with the offending eigenvalue") {
        const RunResult r = run_cli("synth --n 3 --k 2 --q1 0.5");
        CHECK(r.exit_code == 3);
        const json e = json::parse(r.out);
        CHECK(e.at("error").at("kind") == "not_psd");
        CHECK(std::abs(double(e.at("error").at("min_eigenvalue")) + 0.5) <= 1e-10);
    }
    SUBCASE("enumeration cap exits 4") {
        const RunResult r = run_cli("ensemble --n 5 --k 2 --eta1 0.1");
        CHECK(r.exit_code == 4);
        const json e = json::parse(r.out);
        CHECK(e.at("error").at("kind") == "cap_exceeded");
    }
    SUBCASE("unknown subcommand exits 2") {
        CHECK(run_cli("frobnicate").exit_code == 2);
    }
}
