// End-to-end checks of the qree command-line tool.  The binary path and the
// sample-state directory are injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qree/state_io.hpp"

#ifdef _WIN32
#error "the CLI tests assume a POSIX shell"
#endif
#include <sys/wait.h>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI through the shell; `prefix` may set environment variables.
CliResult run_cli(const std::string& args, const std::string& prefix = "") {
  const std::string out_path = "cli_stdout.txt";
  const std::string err_path = "cli_stderr.txt";
  const std::string cmd = prefix + std::string(QREE_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::string data_file(const std::string& name) {
  return std::string(QREE_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("measure command") {
  SECTION("pure state table") {
    const CliResult r = run_cli("measure " + data_file("bell_pure.json"));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("concurrence") != std::string::npos);
    REQUIRE(r.out.find("0.693147") != std::string::npos);  // ln 2
    REQUIRE(r.out.find("closed_form") != std::string::npos);
  }
  SECTION("family state as json") {
    const CliResult r = run_cli("measure --json " + data_file("bd_family.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("concurrence").get<double>() == Catch::Approx(0.2).margin(1e-12));
    REQUIRE(j.at("ree").get<double>() ==
            Catch::Approx(0.020135513550688766).margin(1e-12));
    REQUIRE(j.at("method").get<std::string>() == "closed_form");
  }
  SECTION("density matrix goes through the constructive procedure") {
    const CliResult r = run_cli("measure --json " + data_file("werner_density.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("method").get<std::string>() == "procedure");
    // the file holds a bell-diagonal mixture with dominant weight 0.85
    REQUIRE(j.at("ree").get<double>() ==
            Catch::Approx(std::log(2.0) - qree::binary_entropy(0.85)).margin(1e-9));
  }
  SECTION("oracle flag switches the method") {
    const CliResult r = run_cli("measure --json --oracle " + data_file("bell_pure.json"));
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("method").get<std::string>() == "oracle");
    REQUIRE(j.at("ree").get<double>() == Catch::Approx(std::log(2.0)).margin(1e-6));
  }
}

TEST_CASE("trace command") {
  SECTION("trace to file re-parses and hits the closed form") {
    const std::string out_path = "cli_trace.json";
    const CliResult r =
        run_cli("trace " + data_file("gh_family.json") + " -o " + out_path);
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("ree 0.032189") != std::string::npos);
    const qree::ProcedureTrace tr =
        qree::io::trace_from_json(nlohmann::json::parse(slurp(out_path)));
    REQUIRE(tr.ree_value == Catch::Approx(0.032189300825766154).margin(1e-12));
    REQUIRE(tr.q0.has_value());
    std::remove(out_path.c_str());
  }
  SECTION("trace to stdout carries the full derivation") {
    const CliResult r = run_cli("trace " + data_file("bd_family.json"));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("\"sigma_star\"") != std::string::npos);
    REQUIRE(r.out.find("\"boundary_at_step3\"") != std::string::npos);
    REQUIRE(r.out.find("ree 0.020136") != std::string::npos);
  }
}

TEST_CASE("verify command") {
  SECTION("single family run passes") {
    const CliResult r = run_cli("verify --family vpt --samples 2 --seed 3 --no-oracle");
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find(" 0 failed") != std::string::npos);
    REQUIRE(r.out.find("FAIL") == std::string::npos);
  }
  SECTION("json rows") {
    const CliResult r = run_cli("verify --family gh --samples 1 --seed 2 --no-oracle --json");
    REQUIRE(r.code == 0);
    const auto stop = r.out.rfind(']');
    REQUIRE(stop != std::string::npos);
    const auto rows = nlohmann::json::parse(r.out.substr(0, stop + 1));
    REQUIRE(rows.is_array());
    REQUIRE_FALSE(rows.empty());
    for (const auto& row : rows) REQUIRE(row.at("pass").get<bool>());
  }
}

TEST_CASE("oracle command") {
  const CliResult r = run_cli("oracle " + data_file("bd_family.json") +
                              " --restarts 2 --tol 1e-8 --json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("ree").get<double>() ==
          Catch::Approx(0.020135513550688766).margin(1e-4));
  REQUIRE(j.at("converged").get<bool>());
  REQUIRE(j.at("per_restart_values").size() == 2);
}

TEST_CASE("failure modes and exit codes") {
  SECTION("missing file") {
    const CliResult r = run_cli("measure /nonexistent/state.json");
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("cannot open") != std::string::npos);
  }
  SECTION("invalid json") {
    const std::string path = "cli_bad.json";
    std::ofstream(path) << "{ nope";
    const CliResult r = run_cli("measure " + path);
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("invalid JSON") != std::string::npos);
    std::remove(path.c_str());
  }
  SECTION("separable family spec is a computation error, not a usage error") {
    const std::string path = "cli_sep.json";
    std::ofstream(path) << R"({"kind":"family","family":"bd","params":[0.25,0.25,0.25,0.25]})";
    const CliResult r = run_cli("measure " + path);
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("separable") != std::string::npos);
    std::remove(path.c_str());
  }
  SECTION("unknown verify family is a usage error") {
    const CliResult r = run_cli("verify --family nope --samples 1");
    REQUIRE(r.code == 2);
  }
  SECTION("missing subcommand is a usage error") {
    const CliResult r = run_cli("");
    REQUIRE(r.code == 2);
  }
}

TEST_CASE("logging control") {
  SECTION("default level reports progress on stderr") {
    const CliResult r = run_cli("measure " + data_file("bell_pure.json"));
    REQUIRE(r.err.find("loaded pure state") != std::string::npos);
  }
  SECTION("quiet silences stderr") {
    const CliResult r = run_cli("measure " + data_file("bell_pure.json"), "QREE_LOG=quiet ");
    REQUIRE(r.err.empty());
  }
  SECTION("unknown level warns but continues") {
    const CliResult r = run_cli("measure " + data_file("bell_pure.json"), "QREE_LOG=bogus ");
    REQUIRE(r.code == 0);
    REQUIRE(r.err.find("ignoring unknown QREE_LOG") != std::string::npos);
  }
}
