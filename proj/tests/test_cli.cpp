#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include <doctest.h>
#include <json.hpp>

using json = nlohmann::json;

namespace {

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run(const std::string& args, bool capture_stderr = false) {
    const std::string cmd = std::string(FRUSTUM_CLI_PATH) + " " + args +
                            (capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        output.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("area command, plane-fraction entry, json output") {
    CommandResult r =
        run("--format json area --a 3 --b 2 --c 1 --beta 0.2 --gamma 0.6");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["command"] == "area");
    const double area = doc["result"]["area"].get<double>();
    CHECK(std::abs(area - 6.1749238) / 6.1749238 < 1e-6);
    CHECK(doc["diagnostics"]["f3_gamma"]["converged"].get<bool>());

    // Round trip: re-serializing the parsed document reproduces every
    // numeric field bit-exactly.
    CHECK(json::parse(doc.dump()) == doc);
    char first[64], second[64];
    std::snprintf(first, sizeof(first), "%.17g", area);
    std::snprintf(second, sizeof(second), "%.17g",
                  json::parse(doc.dump())["result"]["area"].get<double>());
    CHECK(std::string(first) == second);
}

TEST_CASE("area command, plane-height entry") {
    CommandResult r =
        run("--format json area --a 5 --b 3 --c 2 --h 1.2 --H 1.9078784028338912");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(std::abs(doc["result"]["area"].get<double>() - 28.41904) < 1e-3);
    CHECK(std::abs(doc["result"]["beta"].get<double>() - 0.3) < 1e-7);
    CHECK(std::abs(doc["result"]["gamma"].get<double>() - 0.8) < 1e-12);
}

TEST_CASE("area command validation failures exit with code 2") {
    CommandResult r = run("area --a 2 --b 3 --c 1 --h 0.1 --H 0.5", true);
    CHECK(r.exit_code == 2);
    json err = json::parse(r.output);
    CHECK(err["error"] == "validation");
    CHECK(err["message"].get<std::string>().find("a >= b") != std::string::npos);

    CHECK(run("area --a 3 --b 2 --c 1 --h 0.1 --H 0.5 --beta 0.2 --gamma 0.6").exit_code == 2);
    CHECK(run("area --a 3 --b 2 --c 1 --h 0.1").exit_code == 2);
}

TEST_CASE("eval-2f1 command") {
    CommandResult r = run("--format json eval-2f1 --a 1 --b 1 --c 2 --z 0.5");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(std::abs(doc["result"]["value"].get<double>() - 1.3862943611198906) < 1e-12);
    // Divergent argument maps to the validation exit code.
    CHECK(run("eval-2f1 --a 1 --b 1 --c 2 --z 1.5", true).exit_code == 2);
}

TEST_CASE("eval-f2 command") {
    CommandResult r = run(
        "--format json eval-f2 --a 1 --b 0.5 --c -0.5 --d 1 --g 2 --x 0 --y 0");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["result"]["value"].get<double>() == 1.0);
    CHECK(run("eval-f2 --a 1 --b 0.5 --c -0.5 --d 1 --g 2 --x 0.7 --y 0.4",
              true).exit_code == 2);
}

TEST_CASE("eval-f3 command with the default parameter set") {
    CommandResult r = run("--format json eval-f3 --x 0 --y 0 --z 0");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["result"]["value"].get<double>() == 1.0);

    r = run("--format json eval-f3 --x 0.64 --y 0.64 --z -0.1024");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(json::parse(r.output)["result"]["value"].get<double>() -
                   5.6724570232936269) < 1e-10);
}

TEST_CASE("eval-f3 with explicit empty groups") {
    // All groups empty: F3 degenerates to exp(x + y + z).
    CommandResult r = run(
        "--format json eval-f3 --no-default-params --x 0.25 --y 0.5 --z -0.125");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(json::parse(r.output)["result"]["value"].get<double>() -
                   std::exp(0.625)) < 1e-10);
}

TEST_CASE("integral command cross-checks") {
    CommandResult r = run(
        "--format json integral --method both angular --sigma 3 --lambda 2 --s -0.5");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.output);
    const double closed = doc["result"]["closed"].get<double>();
    const double quad = doc["result"]["quadrature"].get<double>();
    CHECK(std::abs(closed - quad) / std::abs(quad) < 1e-9);

    r = run("--format json integral --method both radial --beta 0.3 --gamma 0.8 --s -0.5");
    CHECK(r.exit_code == 0);
    doc = json::parse(r.output);
    CHECK(std::abs(doc["result"]["closed"].get<double>() -
                   doc["result"]["quadrature"].get<double>()) < 1e-9);
}

TEST_CASE("verify command") {
    CommandResult r = run(
        "--format json verify --a 5 --b 3 --c 2 --h 1.2 --H 1.9078784028338912 "
        "--verify-tol 1e-5");
    CHECK(r.exit_code == 0);
    json doc = json::parse(r.output);
    CHECK(doc["result"]["pass"].get<bool>());
    CHECK(doc["result"]["rel_deviation"].get<double>() < 1e-5);

    // Degenerate frustum: both sides zero, success.
    r = run("--format json verify --a 5 --b 3 --c 2 --h 1.2 --H 1.2");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.output)["result"]["closed_form"].get<double>() == 0.0);
}

TEST_CASE("text output and --output duplication") {
    const std::string path = "/tmp/frustum_cli_test_output.txt";
    CommandResult r = run("--output " + path +
                          " area --a 3 --b 2 --c 1 --beta 0.2 --gamma 0.6");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("area") != std::string::npos);
    FILE* f = std::fopen(path.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string file_contents;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), f)) > 0)
        file_contents.append(buf.data(), got);
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(file_contents == r.output);
}
