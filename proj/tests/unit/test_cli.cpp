#include "fhs/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

using namespace fhs;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fhs_unit_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) {
        out.push_back(l);
    }
    return out;
}

cli::RunConfig small_config(const fs::path& out) {
    cli::RunConfig c;
    c.n_max = 6;
    c.quad_order = 48;
    c.out = out.string();
    return c;
}

}  // namespace

TEST_CASE("value formatting") {
    CHECK(cli::format_value(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(std::stod(cli::format_value(0.1)) == 0.1);
    CHECK(std::stod(cli::format_value(2.244315549077307)) == 2.244315549077307);
    CHECK(cli::strip_timestamp("a\n\"timestamp\": \"x\",\nb\n") == "a\nb\n");
}

TEST_CASE("endpoint parsing and validation") {
    CHECK(cli::parse_endpoints("-5,-3.3,-2,0.1,1,2") == kReferenceEndpoints);
    CHECK_THROWS_AS(cli::parse_endpoints("-5,abc,1"), ValidationError);
    cli::RunConfig c;
    CHECK_NOTHROW(cli::validate(c));
    c.endpoints = {-5, -2, -3.3, 0.1, 1, 2};
    CHECK_THROWS_WITH_AS(cli::validate(c), "endpoints must be strictly increasing", ValidationError);
    c = {};
    c.endpoints = {-1, 0, 1, 2};
    CHECK_THROWS_AS(cli::validate(c), ValidationError);
    c = {};
    c.theta_eps = 1e-3;
    CHECK_THROWS_AS(cli::validate(c), ValidationError);
    c = {};
    c.quad_order = 64;
    CHECK_THROWS_AS(cli::validate(c), ValidationError);
    c = {};
    c.n_max = 0;
    CHECK_THROWS_AS(cli::validate(c), ValidationError);
    c = {};
    c.kappa_min = 0.5;
    CHECK_THROWS_AS(cli::validate(c), ValidationError);
}

TEST_CASE("eigs and oracle reports") {
    const fs::path dir = fresh_dir("reports");
    const cli::RunConfig c = small_config(dir);
    const cli::Report e = cli::eigs_report(c);
    CHECK_FALSE(e.partial);
    const auto el = lines(e.text);
    REQUIRE(el.size() == 7);
    CHECK(el[0] == "n,kappa_approx,lambda_approx,two_lambda,divisor_residual");
    for (int n = 1; n <= 6; ++n) {
        std::vector<double> v;
        std::istringstream is(el[n]);
        for (std::string f; std::getline(is, f, ',');) {
            v.push_back(std::stod(f));
        }
        REQUIRE(v.size() == 5);
        CHECK(v[0] == n);
        CHECK(v[2] == std::exp(-v[1]));
        CHECK(v[3] == 2.0 * v[2]);
        CHECK(v[4] < 1e-7);
    }
    const cli::Report o = cli::oracle_report(c);
    CHECK(lines(o.text).size() == 7);
    CHECK(lines(o.text)[0] == "n,kappa_exact,lambda_exact,gap_to_next");
    CHECK(lines(o.text)[1].rfind("0,", 0) == 0);
}

TEST_CASE("compare needs both inputs with matching row counts") {
    const fs::path dir = fresh_dir("compare");
    cli::RunConfig c = small_config(dir);
    CHECK_THROWS_AS(cli::compare_report(c), cli::MissingInput);
    write(dir / "eigs.csv", cli::eigs_report(c).text);
    CHECK_THROWS_WITH_AS(cli::compare_report(c), "oracle file missing", cli::MissingInput);
    cli::RunConfig longer = c;
    longer.n_max = 8;
    write(dir / "oracle.csv", cli::oracle_report(longer).text);
    CHECK_THROWS_WITH_AS(cli::compare_report(c), "n_max differs between eigs.csv and oracle.csv", ValidationError);
    write(dir / "oracle.csv", cli::oracle_report(c).text);
    const auto j = nlohmann::json::parse(cli::compare_report(c).text);
    CHECK(j["rows"].size() == 6);
    CHECK(j["index_shift"] == -1);
    CHECK(j["rows"][0]["oracle_label"] == 0);
    CHECK(j["metadata"].contains("timestamp"));
}

TEST_CASE("reports are deterministic") {
    const fs::path dir = fresh_dir("determinism");
    const CheckResult r = cli::determinism_check(small_config(dir));
    CHECK(r.id == 10);
    CHECK_MESSAGE(r.passed, r.detail);
}

TEST_CASE("command line exit codes") {
    const fs::path dir = fresh_dir("main");
    auto run = [&](std::vector<std::string> args) {
        std::vector<char*> argv;
        static std::string prog = "fhs";
        argv.push_back(prog.data());
        for (std::string& a : args) {
            argv.push_back(a.data());
        }
        return cli::main(static_cast<int>(argv.size()), argv.data());
    };
    const std::string out = dir.string();
    CHECK(run({"periods", "--out", out}) == cli::ExitCode::ok);
    CHECK(fs::exists(dir / "periods.json"));
    CHECK(run({"compare", "--out", out}) == cli::ExitCode::missing_input);
    CHECK(run({"eigs", "--endpoints", "-5,-2,-3.3,0.1,1,2", "--out", out}) == cli::ExitCode::validation);
    CHECK(run({"eigs", "--theta-eps", "1e-2", "--out", out}) == cli::ExitCode::validation);
}
