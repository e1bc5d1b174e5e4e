#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levy/cli.hpp"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const char* kConfigText = R"([model]
type = "kobol"
nu = 0.5
c_plus = 1.0
c_minus = 1.0
lambda_plus = 5.0
lambda_minus = -5.0
mu = 0.019721

[market]
S0 = 100.0
K = 100.0
r = 0.1
T = 0.5

[numerics]
contour = "flat"
alpha_plus = 3.0
epsilon = 1e-7
A = 50.0
tol = 1e-6

[output]
format = "json"
)";

std::string write_config() {
    const std::string path = "cli_test_config.toml";
    std::ofstream(path) << kConfigText;
    return path;
}

struct RunOutcome {
    int code;
    std::string out;
    std::string err;
};

RunOutcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = levy::cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("config parsing diagnostics carry line numbers") {
    levy::RunConfig config;
    CHECK_NOTHROW(levy::apply_config_text(config, kConfigText, "inline"));
    CHECK(config.kobol.lambda_plus == 5.0);
    CHECK(config.strikes == std::vector<double>{100.0});
    CHECK_FALSE(config.mu_auto);

    try {
        levy::apply_config_text(config, "[model]\nnu : 0.5\n", "bad");
        FAIL("expected a diagnostic");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("bad:2") != std::string::npos);
    }
    CHECK_THROWS_AS(
        levy::apply_config_text(config, "[mystery]\n", "bad"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        levy::apply_config_text(config, "[model]\nnu = abc\n", "bad"),
        std::invalid_argument);
}

TEST_CASE("price subcommand with cross-check") {
    const std::string cfg = write_config();
    const auto r = run({"price", "--config", cfg, "--strike", "100", "--check"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 1);
    const auto& row = j["results"][0];
    CHECK(row["strike"].get<double>() == 100.0);
    CHECK(row["price"].get<double>() > 0.0);
    CHECK(row["check"].contains("delta"));
    CHECK(std::abs(row["check"]["delta"].get<double>()) < 5e-3);
    CHECK(j["config"]["numerics"]["alpha_plus"].get<double>() == 3.0);
    CHECK(j["config"]["model"]["mu"].get<double>() == 0.019721);
}

TEST_CASE("impossible cross-check tolerance exits 4") {
    const std::string cfg = write_config();
    const auto r = run({"price", "--config", cfg, "--strike", "100", "--check",
                        "--check-tol", "1e-15"});
    CHECK(r.code == 4);
}

TEST_CASE("budget subcommand reproduces the composite plan") {
    const std::string cfg = write_config();
    const auto r =
        run({"budget", "--config", cfg, "--epsilon", "1e-7", "--A", "50"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["plan"]["N"].get<int>() == 149);
    CHECK(j["budget"]["eps_total"].get<double>() ==
          doctest::Approx(2.312260033e-5).epsilon(1e-3));
}

TEST_CASE("tables subcommand emits the reference tables") {
    const std::string cfg = write_config();
    const auto r = run({"tables", "--config", cfg});
    CHECK(r.code == 0);
    CHECK(r.out.find("eps,sigma,h") != std::string::npos);
    CHECK(r.out.find("4.710840317") != std::string::npos);
    CHECK(r.out.find("12.76988814") != std::string::npos);
    CHECK(r.out.find("A,eps_tail") != std::string::npos);
}

TEST_CASE("verify subcommand reports a verified arc-decay verdict") {
    const std::string cfg = write_config();
    const auto r = run({"verify", "--config", cfg});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "verified");
    CHECK(j["radii"].size() == 4);
}

TEST_CASE("density subcommand emits a curve") {
    const std::string cfg = write_config();
    const auto r = run({"density", "--config", cfg, "--method", "approximant",
                        "--ymin", "0", "--ymax", "2", "--points", "5"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["curve"]["y"].size() == 5);
    CHECK(j["curve"]["method"] == "approximant");
}

TEST_CASE("csv output carries the config echo") {
    const std::string cfg = write_config();
    const auto r = run({"price", "--config", cfg, "--strike", "90,100,110",
                        "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# config ", 0) == 0);
    CHECK(r.out.find("strike,price,residue,method") != std::string::npos);
}

TEST_CASE("unknown flags and bad configs exit 2") {
    const std::string cfg = write_config();
    CHECK(run({"price", "--config", cfg, "--no-such-flag"}).code == 2);
    CHECK(run({"price", "--config", "does_not_exist.toml"}).code == 2);
    CHECK(run({}).code == 2); // missing subcommand
    std::ofstream("cli_bad_config.toml") << "[model]\nnu = oops\n";
    const auto r = run({"price", "--config", "cli_bad_config.toml"});
    CHECK(r.code == 2);
    CHECK(r.err.find("cli_bad_config.toml:2") != std::string::npos);
}

TEST_CASE("identical invocations give byte-identical output") {
    const std::string cfg = write_config();
    const std::vector<std::string> args{"price", "--config", cfg, "--strike",
                                        "95,105"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("strike fan-out respects the thread cap") {
    const std::string cfg = write_config();
    const std::vector<std::string> args{"price", "--config", cfg, "--strike",
                                        "90,100,110"};
    const auto serial = run(args);
    setenv("LEVY_PRICER_THREADS", "3", 1);
    const auto parallel = run(args);
    unsetenv("LEVY_PRICER_THREADS");
    CHECK(serial.code == 0);
    CHECK(parallel.code == 0);
    CHECK(serial.out == parallel.out);
}
