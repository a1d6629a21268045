#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli;
std::filesystem::path g_tmp;

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

/// CSV stripped of the runtime_ms column (the only nondeterministic field).
std::string strip_runtime(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto last_comma = line.rfind(',');
        out << line.substr(0, last_comma) << '\n';
    }
    return out.str();
}

const char* kFreeSpec =
    "[group]\nkind = free\nrank = 2\n[step]\nbuiltin = srw-free\n";
const char* kSwsSpec =
    "[group]\nkind = lamplighter\nlamp_order = 2\n[step]\nbuiltin = sws\n";

}  // namespace

TEST_CASE("curve: schema, determinism, closed-form column") {
    const auto spec = g_tmp / "free.walk";
    write_file(spec, kFreeSpec);
    const auto out1 = g_tmp / "curve1.csv";
    const auto out2 = g_tmp / "curve2.csv";
    const std::string args = "curve --spec " + spec.string() +
                             " --alphas 0.5:2:0.5 --n 32 --method free-dp --out ";
    REQUIRE(run(args + out1.string()) == 0);
    REQUIRE(run(args + out2.string()) == 0);

    const std::string csv = slurp(out1);
    CHECK(csv.rfind("alpha,n_max,fekete_upper,cesaro_estimate,closed_form,method,runtime_ms\n",
                    0) == 0);
    CHECK(strip_runtime(csv) == strip_runtime(slurp(out2)));

    // four grid points, every row closed-form populated
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.find(",free-dp,") != std::string::npos);
        CHECK(line.find(",,") == std::string::npos);  // closed_form present
    }
    CHECK(rows == 4);
}

TEST_CASE("curve: json format") {
    const auto spec = g_tmp / "sws.walk";
    write_file(spec, kSwsSpec);
    const auto out = g_tmp / "curve.json";
    REQUIRE(run("curve --spec " + spec.string() +
                " --alphas 1.5:2.5:0.5 --n 12 --out " + out.string() +
                " --format json") == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"closed_form\": 0.0") != std::string::npos);
    CHECK(text.find("\"method\": \"sws-dp\"") != std::string::npos);
}

TEST_CASE("converge: schema and the empty series edge") {
    const auto spec = g_tmp / "free2.walk";
    write_file(spec, kFreeSpec);
    const auto out = g_tmp / "conv.csv";
    REQUIRE(run("converge --spec " + spec.string() +
                " --alpha 1 --n-max 16 --out " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("n,H,H_over_n,cesaro\n", 0) == 0);
    int rows = -1;
    for (const char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 16);

    REQUIRE(run("converge --spec " + spec.string() + " --alpha 1 --n-max 0 --out " +
                out.string()) == 0);
    CHECK(slurp(out) == "n,H,H_over_n,cesaro\n");
}

TEST_CASE("bits flag rescales output") {
    const auto spec = g_tmp / "free3.walk";
    write_file(spec, kFreeSpec);
    const auto nats = g_tmp / "nats.csv";
    const auto bits = g_tmp / "bits.csv";
    REQUIRE(run("converge --spec " + spec.string() + " --alpha 0 --n-max 1 --out " +
                nats.string()) == 0);
    REQUIRE(run("converge --spec " + spec.string() + " --alpha 0 --n-max 1 --out " +
                bits.string() + " --bits") == 0);
    // H_0(mu) = log 4 nats = 2 bits
    CHECK(slurp(nats).find("1,1.38629436112,") != std::string::npos);
    CHECK(slurp(bits).find("1,2,") != std::string::npos);
}

TEST_CASE("exit codes: spec errors and budget exhaustion") {
    const auto bad = g_tmp / "bad.walk";
    write_file(bad, "[group]\nkind = banana\n[step]\nbuiltin = sws\n");
    const auto out = g_tmp / "never.csv";
    CHECK(run("curve --spec " + bad.string() + " --alphas 1:1:1 --n 4 --out " +
              out.string()) == 2);
    CHECK(run("curve --spec " + (g_tmp / "missing.walk").string() +
              " --alphas 1:1:1 --n 4 --out " + out.string()) == 2);
    CHECK(run("nonsense-subcommand") == 2);

    const auto spec = g_tmp / "free4.walk";
    write_file(spec, kFreeSpec);
    CHECK(run("converge --spec " + spec.string() +
              " --alpha 1 --n-max 12 --method generic --support-cap 100 --out " +
              out.string()) == 3);
}

TEST_CASE("verify: single suite exits clean") {
    CHECK(run("verify --suite group") == 0);
    const auto json_path = g_tmp / "verify.json";
    CHECK(run("verify --suite renyi --json " + json_path.string()) == 0);
    const std::string text = slurp(json_path);
    CHECK(text.find("\"pass\": true") != std::string::npos);
    CHECK(text.find("\"seed\": 20250810") != std::string::npos);
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    if (argc > 1 && argv[1][0] != '-') {
        g_cli = argv[1];
        --argc;
        ++argv;
    }
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: cli_tests <path-to-renyiwalk-binary>\n");
        return 1;
    }
    g_tmp = std::filesystem::temp_directory_path() / "renyiwalk_cli_tests";
    std::filesystem::create_directories(g_tmp);
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
