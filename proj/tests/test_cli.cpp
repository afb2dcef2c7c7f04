// End-to-end checks of the command-line tool: spawns the real binary (path
// passed as the first positional test argument) and inspects exit codes and
// CSV output.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#error "posix-only test"
#endif
#include <sys/wait.h>

extern std::vector<std::string> wpr_test_args;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string tool_path() {
    for (const auto& a : wpr_test_args) {
        if (!a.empty() && a[0] != '-') return a;
    }
    FAIL("pass the tool binary path as a test argument");
    return {};
}

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string cmd =
        "\"" + tool_path() + "\" " + args + " > cli_test_out.tmp 2> cli_test_err.tmp";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_test_out.tmp");
    r.err = slurp("cli_test_err.tmp");
    std::remove("cli_test_out.tmp");
    std::remove("cli_test_err.tmp");
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("version flag") {
    const auto r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "1.0.0"));
}

TEST_CASE("analytic outage point") {
    const auto r = run_cli("outage --scheme rrs --mode analytic");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "parameter,scheme,mode,value,stderr,trials"));
    CHECK(contains(r.out, "power_db=30,RRS,analytic,"));
    // Defaults: lambda 1, 30 dB; frozen closed-form value.
    CHECK(contains(r.out, "0.1147978455373836"));
    // The dB convention is documented in the header comments.
    CHECK(contains(r.out, "# convention: power given in dB"));
    CHECK(contains(r.out, "# wprelay 1.0.0"));
}

TEST_CASE("invalid invocations fail loudly") {
    CHECK(run_cli("outage --no-such-flag").exit_code != 0);
    const auto bad_scheme = run_cli("outage --scheme xyz");
    CHECK(bad_scheme.exit_code != 0);
    CHECK(contains(bad_scheme.err, "xyz"));
    CHECK(run_cli("sweep --scheme rrs").exit_code != 0); // --sweep is required
    CHECK(run_cli("").exit_code != 0);                   // subcommand required
    const auto bad_mode = run_cli("steady-state --mode asymptotic");
    CHECK(bad_mode.exit_code != 0);
}

TEST_CASE("simulated runs are reproducible byte for byte") {
    const std::string cmd =
        "outage --scheme rcsb --mode simulated --seed 7 --draws 6 --slots 500";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, ",RCSB,simulated,"));
    // Simulated rows carry a standard error and a trial count.
    CHECK(contains(a.out, ",3000\n"));
}

TEST_CASE("steady-state table shape") {
    const auto r = run_cli("steady-state --scheme db --mode analytic,simulated "
                           "--seed 3 --draws 6 --slots 500");
    CHECK(r.exit_code == 0);
    for (const char* stat : {"pi0,DB,analytic", "pi1,DB,analytic",
                             "eta0,DB,analytic", "eta1,DB,analytic",
                             "eta1,DB,simulated"}) {
        CHECK_MESSAGE(contains(r.out, stat), "missing row " << stat);
    }
}

TEST_CASE("sweep reports per-point failures without aborting") {
    // psi = 1.5 is outside the model; its rows must carry nan and an error
    // note while the valid point is still emitted, with a nonzero exit.
    const auto r = run_cli("sweep --sweep psi=0.5:1.5:0.5 --scheme rrs --mode analytic");
    CHECK(r.exit_code != 0);
    CHECK(contains(r.out, "psi=0.5,RRS,analytic,"));
    CHECK(contains(r.out, "nan"));
    CHECK(contains(r.out, "# error:"));
}

TEST_CASE("sweep output is ordered by parameter value") {
    const auto r = run_cli("sweep --sweep power_db=10:30:10 --scheme rrs,db "
                           "--mode analytic");
    CHECK(r.exit_code == 0);
    const auto p10 = r.out.find("power_db=10,RRS");
    const auto p20 = r.out.find("power_db=20,RRS");
    const auto p30 = r.out.find("power_db=30,RRS");
    REQUIRE(p10 != std::string::npos);
    REQUIRE(p20 != std::string::npos);
    REQUIRE(p30 != std::string::npos);
    CHECK(p10 < p20);
    CHECK(p20 < p30);
    CHECK(contains(r.out, "power_db=10,DB,analytic,"));
}

TEST_CASE("config file with flag override") {
    {
        std::ofstream f("cli_test_config.tmp");
        f << "# base operating point\n";
        f << "lambda = 0.5\n";
        f << "power_db = 20\n";
    }
    const auto from_config = run_cli(
        "outage --config cli_test_config.tmp --power-db 30 --scheme rrs --mode analytic");
    const auto from_flags =
        run_cli("outage --lambda 0.5 --power-db 30 --scheme rrs --mode analytic");
    std::remove("cli_test_config.tmp");
    CHECK(from_config.exit_code == 0);
    CHECK(from_config.out == from_flags.out);

    SUBCASE("unknown keys are rejected with the file position") {
        {
            std::ofstream f("cli_test_config.tmp");
            f << "bogus = 1\n";
        }
        const auto r = run_cli("outage --config cli_test_config.tmp");
        std::remove("cli_test_config.tmp");
        CHECK(r.exit_code != 0);
        CHECK(contains(r.err, "bogus"));
        CHECK(contains(r.err, "cli_test_config.tmp"));
    }
}

TEST_CASE("multicell point") {
    const auto r = run_cli("multicell --scheme rrs --mode analytic --lambda 0.5 "
                           "--rate 0.001 --power-db 30 --mu 0.005");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "0.14575718673395721"));
    SUBCASE("beamforming is rejected in the multi-cell model") {
        const auto bad = run_cli("multicell --scheme db --mode analytic");
        CHECK(bad.exit_code != 0);
        CHECK(contains(bad.err, "DB"));
    }
}

TEST_CASE("validate subcommand") {
    const auto r = run_cli("validate --quick --criterion 7");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "[PASS] C7"));
    CHECK_FALSE(contains(r.out, "[FAIL]"));
}

TEST_CASE("output file option") {
    const auto r = run_cli("outage --scheme rrs --mode analytic --out cli_test_file.tmp");
    CHECK(r.exit_code == 0);
    const std::string written = slurp("cli_test_file.tmp");
    std::remove("cli_test_file.tmp");
    CHECK(contains(written, "parameter,scheme,mode,value,stderr,trials"));
    CHECK(contains(written, "power_db=30,RRS,analytic,"));
}
