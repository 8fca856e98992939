// End-to-end checks of the command-line binary via std::system. The binary
// path and the bundled data directory come in as compile definitions.
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef PORTOPT_CLI_PATH
#error "PORTOPT_CLI_PATH must point at the portopt binary"
#endif
#ifndef PORTOPT_DATA_DIR
#error "PORTOPT_DATA_DIR must point at the bundled instance files"
#endif

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() /
               ("portopt_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

int run(const std::string& args, const std::string& stdout_path,
        const std::string& stderr_path) {
    const std::string cmd = std::string(PORTOPT_CLI_PATH) + " " + args + " >" +
                            stdout_path + " 2>" + stderr_path;
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
#ifdef WEXITSTATUS
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
    return status;
#endif
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> lines_of(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string instance_path() {
    return std::string(PORTOPT_DATA_DIR) + "/port1.txt";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("a missing instance file fails with the path in stderr") {
    const TempDir dir;
    const int code = run("uef /nonexistent/instance.txt -o " + dir.file("u.csv"),
                         dir.file("out.txt"), dir.file("err.txt"));
    CHECK(code == 1);
    CHECK(slurp(dir.file("err.txt")).find("/nonexistent/instance.txt") !=
          std::string::npos);
}

TEST_CASE("uef writes the requested number of frontier rows plus a plot") {
    const TempDir dir;
    const std::string csv = dir.file("uef.csv");
    const int code = run("uef " + instance_path() + " -o " + csv + " --uef-points 2",
                         dir.file("out.txt"), dir.file("err.txt"));
    REQUIRE(code == 0);
    const std::vector<std::string> lines = lines_of(csv);
    REQUIRE(lines.size() == 3);  // header + the two end points
    CHECK(lines[0] == "risk,return,lambda,assets,weights");
    CHECK(fs::exists(dir.file("uef.svg")));
    CHECK(slurp(dir.file("out.txt")).find("uef: 2 points") != std::string::npos);
}

TEST_CASE("infeasible bound options fail fast") {
    const TempDir dir;
    // k * epsilon = 10 * 0.2 = 2 > 1: no feasible portfolio exists
    const int code = run("solve " + instance_path() + " --epsilon 0.2 -o " +
                             dir.file("cef.csv"),
                         dir.file("out.txt"), dir.file("err.txt"));
    CHECK(code == 1);
    CHECK(slurp(dir.file("err.txt")).find("error:") != std::string::npos);
    CHECK(!fs::exists(dir.file("cef.csv")));
}

TEST_CASE("an unknown init mode is rejected by the parser") {
    const TempDir dir;
    const int code = run("solve " + instance_path() + " --init sideways",
                         dir.file("out.txt"), dir.file("err.txt"));
    CHECK(code != 0);
}

TEST_CASE("metrics of a frontier against itself report zero error") {
    const TempDir dir;
    const std::string csv = dir.file("uef.csv");
    REQUIRE(run("uef " + instance_path() + " -o " + csv + " --uef-points 40",
                dir.file("out.txt"), dir.file("err.txt")) == 0);

    const std::string report = dir.file("report.csv");
    const int code = run("metrics --cef " + csv + " --uef " + csv + " -o " + report +
                             " --time-seconds 1.5",
                         dir.file("out2.txt"), dir.file("err2.txt"));
    REQUIRE(code == 0);
    CHECK(slurp(report) ==
          "metric,value\n"
          "median_error,0\n"
          "mean_error,0\n"
          "risk_error,0\n"
          "return_error,0\n"
          "time_seconds,1.5\n");
}

TEST_CASE("solve with a trace streams per-iteration rows") {
    const TempDir dir;
    const std::string csv = dir.file("cef.csv");
    const std::string trace = dir.file("trace.csv");
    const int code = run("solve " + instance_path() + " -o " + csv +
                             " --lambda-step 1.0 --t-trials 50 --trace " + trace,
                         dir.file("out.txt"), dir.file("err.txt"));
    REQUIRE(code == 0);
    const std::vector<std::string> rows = lines_of(trace);
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == "lambda,iteration,objective,incumbent,move,target");
    // every row names one of the three move kinds
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool named = rows[i].find("increase") != std::string::npos ||
                           rows[i].find("decrease") != std::string::npos ||
                           rows[i].find("swap") != std::string::npos;
        CHECK(named);
    }
    CHECK(lines_of(csv).size() == 3);  // header + lambda 0 and lambda 1
}

}  // TEST_SUITE
