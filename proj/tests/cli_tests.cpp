#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "railplan/cli.hpp"

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = railplan::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden(const std::string& name) {
    return read_file(std::string(RAILPLAN_GOLDEN_DIR) + "/" + name);
}

/// Parses CSV data rows (header skipped) into columns of doubles.
std::vector<std::vector<double>> parse_rows(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ','))
            row.push_back(field.empty() ? std::nan("") : std::stod(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

const std::vector<std::string> kGoldenCases[] = {
    {"capacity", "--rho", "10", "--d0", "1", "--alpha", "2", "--speed", "2", "--points", "9"},
    {"service-curve", "--rho", "10", "--d0", "1", "--alpha", "2", "--speed", "2", "--points", "9"},
    {"eta-curve", "--rho", "1", "--rho", "10", "--rho", "100", "--d0", "1", "--alpha", "2",
     "--ds-max", "20", "--points", "10"},
    {"speed-curve", "--rho", "10", "--d0", "1", "--alpha", "2", "--service-bits", "2", "--points",
     "10", "--ds-max", "10"},
    {"solve-interval", "--rho", "10", "--d0", "1", "--alpha", "2", "--eta", "0.6"},
    {"solve-interval", "--rho", "10", "--d0", "1", "--alpha", "2", "--service-bits", "2",
     "--speed", "4"},
    {"plan", "--rho", "10", "--d0", "1", "--alpha", "2", "--eta", "0.29726499196266",
     "--track-length", "10"},
    {"strategy", "--rho", "10", "--d0", "1", "--alpha", "2", "--service-bits", "2", "--speed",
     "5"},
    {"simulate", "--rho", "10", "--d0", "1", "--alpha", "2", "--eta", "0.29726499196266",
     "--track-length", "6", "--speed", "2"},
};

const char* kGoldenFiles[] = {
    "capacity.csv",       "service_curve.csv",        "eta_curve.csv",
    "speed_curve.csv",    "solve_interval_eta.csv",   "solve_interval_service.csv",
    "plan.csv",           "strategy.csv",             "simulate.csv",
};

} // namespace

TEST_CASE("every subcommand reproduces its golden file byte for byte") {
    for (std::size_t i = 0; i < std::size(kGoldenCases); ++i) {
        CAPTURE(kGoldenFiles[i]);
        const CliResult first = run_cli(kGoldenCases[i]);
        CHECK(first.code == 0);
        CHECK(first.err.empty());
        CHECK(first.out == golden(kGoldenFiles[i]));
        // byte-identical on repetition
        CHECK(run_cli(kGoldenCases[i]).out == first.out);
    }
}

TEST_CASE("column headers are exact") {
    auto header_of = [](const std::string& s) { return s.substr(0, s.find('\n')); };
    CHECK(header_of(run_cli(kGoldenCases[0]).out) == "t,capacity_bits_per_s");
    CHECK(header_of(run_cli(kGoldenCases[1]).out) == "t,service_bits");
    CHECK(header_of(run_cli(kGoldenCases[2]).out) == "d_s,eta");
    CHECK(header_of(run_cli(kGoldenCases[3]).out) == "d_s,v");
    CHECK(header_of(run_cli(kGoldenCases[4]).out) == "d_s");
    CHECK(header_of(run_cli(kGoldenCases[6]).out) ==
          "index,position,region_start,region_end,interval_to_next");
    CHECK(header_of(run_cli(kGoldenCases[7]).out) == "x_start,x_end,t_start,t_end,buffer_bits");
    CHECK(header_of(run_cli(kGoldenCases[8]).out) == "station_index,delivered_bits,ratio");
}

TEST_CASE("eta-curve rows are increasing and concave") {
    const CliResult r = run_cli({"eta-curve", "--rho", "10", "--d0", "1", "--alpha", "2",
                                 "--ds-max", "20", "--points", "20"});
    REQUIRE(r.code == 0);
    const auto rows = parse_rows(r.out);
    REQUIRE(rows.size() == 20);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i][1] > rows[i - 1][1]);
    for (std::size_t i = 2; i < rows.size(); ++i)
        CHECK(rows[i][1] - 2.0 * rows[i - 1][1] + rows[i - 2][1] <= 1e-9);
}

TEST_CASE("solve-interval recovers d_s = 2 from the rounded eta") {
    const CliResult r =
        run_cli({"solve-interval", "--eta", "0.29727", "--rho", "10", "--d0", "1", "--alpha", "2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_rows(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == doctest::Approx(2.000).epsilon(1e-3));
}

TEST_CASE("--snr0-db 10 with d0=1 is byte-identical to --rho 10") {
    const CliResult a = run_cli({"capacity", "--rho", "10", "--speed", "2", "--points", "7"});
    const CliResult b = run_cli({"capacity", "--snr0-db", "10", "--speed", "2", "--points", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit statuses") {
    SUBCASE("unknown flag -> 2") {
        const CliResult r = run_cli({"capacity", "--frobnicate"});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(!r.err.empty());
    }
    SUBCASE("no subcommand -> 2") { CHECK(run_cli({"--rho", "10"}).code == 2); }
    SUBCASE("missing SNR -> 2") { CHECK(run_cli({"capacity", "--speed", "1"}).code == 2); }
    SUBCASE("both --rho and --snr0-db -> 2") {
        CHECK(run_cli({"capacity", "--rho", "10", "--snr0-db", "10", "--speed", "1"}).code == 2);
    }
    SUBCASE("missing --speed -> 2") { CHECK(run_cli({"capacity", "--rho", "10"}).code == 2); }
    SUBCASE("--points 1 -> 2") {
        CHECK(run_cli({"capacity", "--rho", "10", "--speed", "1", "--points", "1"}).code == 2);
    }
    SUBCASE("eta and service-bits together -> 2") {
        CHECK(run_cli({"solve-interval", "--rho", "10", "--eta", "0.5", "--service-bits", "2",
                       "--speed", "1"}).code == 2);
    }
    SUBCASE("invalid alpha -> 2") {
        CHECK(run_cli({"capacity", "--rho", "10", "--alpha", "1", "--speed", "1"}).code == 2);
    }
    SUBCASE("infeasible ratio -> 3, message names it") {
        const CliResult r = run_cli({"solve-interval", "--eta", "1.0", "--rho", "10"});
        CHECK(r.code == 3);
        CHECK(r.err.find("infeasible-ratio") != std::string::npos);
    }
    SUBCASE("infeasible quantity -> 3, message names it") {
        const CliResult r = run_cli(
            {"solve-interval", "--service-bits", "21.0", "--speed", "1", "--rho", "10"});
        CHECK(r.code == 3);
        CHECK(r.err.find("infeasible-service") != std::string::npos);
    }
    SUBCASE("starved quadrature budget -> 4") {
        const CliResult r = run_cli({"service-curve", "--rho", "10", "--speed", "1",
                                     "--max-subdivisions", "1", "--points", "3"});
        CHECK(r.code == 4);
        CHECK(!r.err.empty());
    }
    SUBCASE("zero subdivision cap -> 2 (invalid setting)") {
        CHECK(run_cli({"service-curve", "--rho", "10", "--speed", "1", "--max-subdivisions",
                       "0"}).code == 2);
    }
    SUBCASE("missing config file -> 2") {
        CHECK(run_cli({"capacity", "--config", "/nonexistent/railplan.cfg"}).code == 2);
    }
    SUBCASE("--help -> 0") {
        const CliResult r = run_cli({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("railplan") != std::string::npos);
    }
}

TEST_CASE("config file provides defaults, flags override") {
    namespace fs = std::filesystem;
    const fs::path cfg = fs::temp_directory_path() / "railplan_cli_test.cfg";
    {
        std::ofstream f(cfg);
        f << "rho=10\nd0=1\nalpha=2\nspeed=2\npoints=9\n";
    }
    const CliResult direct = run_cli(kGoldenCases[0]); // same parameters as flags
    const CliResult from_config = run_cli({"capacity", "--config", cfg.string()});
    CHECK(from_config.code == 0);
    CHECK(from_config.out == direct.out);

    // a flag beats the config value
    const CliResult overridden = run_cli({"capacity", "--config", cfg.string(), "--points", "5"});
    const CliResult direct5 = run_cli(
        {"capacity", "--rho", "10", "--d0", "1", "--alpha", "2", "--speed", "2", "--points", "5"});
    CHECK(overridden.out == direct5.out);
    fs::remove(cfg);
}

TEST_CASE("--out writes the same bytes to a file and nothing to stdout") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "railplan_cli_test_out.csv";
    std::vector<std::string> args = kGoldenCases[0];
    args.push_back("--out");
    args.push_back(path.string());
    const CliResult r = run_cli(args);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(read_file(path.string()) == golden("capacity.csv"));
    fs::remove(path);
}
