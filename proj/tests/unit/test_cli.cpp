// End-to-end tests of the kjplus command-line tool.
#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef KJPLUS_CLI_PATH
#error "KJPLUS_CLI_PATH must point at the kjplus executable"
#endif

namespace {

struct CliResult {
    int status = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    const auto err_path = std::filesystem::temp_directory_path() / ("kjplus_cli_stderr_" + std::to_string(::getpid()));
    const std::string cmd = env + " \"" + KJPLUS_CLI_PATH + "\" " + args + " 2>\"" + err_path.string() + "\"";
    CliResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = ::pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream err(err_path);
    std::stringstream ss;
    ss << err.rdbuf();
    r.err = ss.str();
    std::filesystem::remove(err_path);
    return r;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST(Cli, InvariantsForT52) {
    const CliResult r = run_cli("invariants --k 5 --l 2 --e 0.2");
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["j_plus"], 2);
    EXPECT_EQ(j["w0"], -3);
    EXPECT_EQ(j["j1"]["num"], 13);
    EXPECT_EQ(j["j1"]["den"], 2);
    EXPECT_EQ(j["j2"], 12);
    EXPECT_EQ(j["closed_form"]["j2"], 12);
    EXPECT_EQ(j["regime"], "direct_below_threshold");
    EXPECT_TRUE(j["match"].get<bool>());
    EXPECT_TRUE(j["warnings"].empty());
}

TEST(Cli, InvariantsRetrogradeWithSampleOverride) {
    const CliResult r = run_cli("invariants --k 3 --l 5 --e 0.3 --direction retrograde --samples 30000");
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["j_plus"], -42);
    EXPECT_EQ(j["j1"]["num"], -10);
    EXPECT_EQ(j["j1"]["den"], 1);
}

TEST(Cli, NonCoprimePairIsInvalid) {
    const CliResult r = run_cli("invariants --k 4 --l 4 --e 0.2");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("coprime"), std::string::npos) << r.err;
}

TEST(Cli, EccentricityInsideGuardBandIsRejected) {
    const CliResult r = run_cli("invariants --k 5 --l 2 --e 0.481");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.err.find("guard band"), std::string::npos) << r.err;
}

TEST(Cli, BadArgumentsExitWithTwo) {
    EXPECT_EQ(run_cli("invariants --k 5 --l 2").status, 2);
    EXPECT_EQ(run_cli("invariants --k 5 --l 2 --e 0.2 --direction sideways").status, 2);
    EXPECT_EQ(run_cli("orbit --k 5 --l 2 --e 0.2 --format png").status, 2);
    EXPECT_EQ(run_cli("").status, 2);
}

TEST(Cli, OrbitCsvHasOneRowPerSamplePlusClosure) {
    const CliResult r = run_cli("orbit --k 5 --l 2 --e 0.2 --format csv --samples 500");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out.rfind("t,x,y\n", 0), 0u);
    EXPECT_EQ(count_lines(r.out), 502u);
    // The closing row repeats the first point.
    std::istringstream is(r.out);
    std::string header, first, last, line;
    std::getline(is, header);
    std::getline(is, first);
    while (std::getline(is, line)) last = line;
    EXPECT_EQ(first.substr(first.find(',')), last.substr(last.find(',')));
}

TEST(Cli, OrbitSvgHillOverlayOnlyBelowCriticalEnergy) {
    // T(5,2) at e = 0.2 has c below -3/2; T(1,2) at e = 0.9 does not.
    const CliResult low = run_cli("orbit --k 5 --l 2 --e 0.2 --format svg --overlay hill --samples 2000");
    ASSERT_EQ(low.status, 0) << low.err;
    EXPECT_NE(low.out.find("<svg"), std::string::npos);
    EXPECT_NE(low.out.find("stroke-dasharray=\"6 3\""), std::string::npos);

    const CliResult high = run_cli("orbit --k 1 --l 2 --e 0.9 --format svg --overlay hill --samples 2000");
    ASSERT_EQ(high.status, 0) << high.err;
    EXPECT_EQ(high.out.find("stroke-dasharray=\"6 3\""), std::string::npos);
}

TEST(Cli, OrbitWritesToFile) {
    const auto path = std::filesystem::temp_directory_path() / ("kjplus_cli_orbit_" + std::to_string(::getpid()) + ".svg");
    const CliResult r = run_cli("orbit --k 5 --l 2 --e 0.2 --format svg --overlay all --samples 2000 -o \"" + path.string() + "\"");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    ASSERT_TRUE(std::filesystem::exists(path));
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NE(ss.str().find("</svg>"), std::string::npos);
    EXPECT_NE(ss.str().find("fill=\"#d02020\""), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ScanT52) {
    const CliResult r = run_cli("scan --k 5 --l 2");
    ASSERT_EQ(r.status, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    int inf = 0, ii = 0;
    for (const auto& ev : j["events"]) {
        const std::string kind = ev["kind"];
        EXPECT_NE(kind, "III");
        EXPECT_NE(kind, "direct_tangency");
        if (kind == "I_inf") {
            ++inf;
            EXPECT_NEAR(ev["eccentricity"].get<double>(), 0.4806, 2e-3);
        }
        if (kind == "II+") {
            ++ii;
            EXPECT_GT(ev["eccentricity"].get<double>(), 0.90);
            EXPECT_LT(ev["eccentricity"].get<double>(), 0.96);
        }
    }
    EXPECT_EQ(inf, 1);
    EXPECT_EQ(ii, 1);
    EXPECT_EQ(j["endpoints"].size(), 2u);
}

TEST(Cli, ValidateSmallGrid) {
    const CliResult r = run_cli("validate --k-max 3");
    EXPECT_EQ(r.status, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("cells pass"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);

    const CliResult js = run_cli("validate --k-max 3 --json");
    ASSERT_EQ(js.status, 0) << js.err;
    const auto j = nlohmann::json::parse(js.out);
    EXPECT_EQ(j["failures"], 0);
    EXPECT_FALSE(j["cells"].empty());
}

TEST(Cli, SampleCountFromEnvironment) {
    const CliResult r = run_cli("orbit --k 2 --l 1 --e 0.3 --format csv", "KJPLUS_SAMPLES=100");
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(count_lines(r.out), 102u);
    EXPECT_EQ(run_cli("orbit --k 2 --l 1 --e 0.3 --format csv", "KJPLUS_SAMPLES=abc").status, 2);
}
