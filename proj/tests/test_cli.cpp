#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ince_cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "ince");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = ince::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

ince::cli::Json parse(const std::string& s) { return ince::cli::Json::parse(s); }

std::filesystem::path temp_dir() {
    auto p = std::filesystem::temp_directory_path() / "ince_cli_tests";
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        out.push_back(l);
    return out;
}

} // namespace

TEST(CliSpectrum, FigureEigenvalue) {
    const auto r = run({"spectrum", "--parity", "even", "--n", "15", "--a", "12", "--tier", "extended"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("718.092858484742"), std::string::npos);
    const auto j = parse(r.out);
    EXPECT_EQ(j["eigenvalues"].size(), 30u);
    EXPECT_EQ(j["eigenvectors"].size(), 30u);
    EXPECT_EQ(j["tier"], "extended");
    EXPECT_EQ(j["manifest"]["command"], "spectrum");
}

TEST(CliSpectrum, SmallCases) {
    const auto odd = parse(run({"spectrum", "--parity", "odd", "--n", "0", "--a", "5"}).out);
    EXPECT_EQ(odd["eigenvalues"], ince::cli::Json::array({1.0}));
    const auto even = parse(run({"spectrum", "--parity", "even", "--n", "1", "--a", "12"}).out);
    EXPECT_NEAR(even["eigenvalues"][0].get<double>(), 2 + std::sqrt(148.0), 1e-13);
    EXPECT_NEAR(even["eigenvalues"][1].get<double>(), 2 - std::sqrt(148.0), 1e-13);
}

TEST(CliSpectrum, CsvWithSidecar) {
    const auto out = temp_dir() / "spectrum.csv";
    const auto r = run({"spectrum", "--parity", "odd", "--n", "1", "--a", "2", "--format", "csv", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(out);
    const auto ls = lines(text);
    ASSERT_EQ(ls.size(), 1u + 9u);
    EXPECT_EQ(ls[0], "k,eta,r,D");
    EXPECT_EQ(text.find('\r'), std::string::npos);
    const auto manifest = parse(slurp(temp_dir() / "spectrum.manifest.json"));
    EXPECT_EQ(manifest["command"], "spectrum");
    EXPECT_EQ(manifest["outputs"].size(), 2u);
}

TEST(CliSpectrum, Deterministic) {
    const std::vector<std::string> args = {"spectrum", "--parity", "even", "--n", "6", "--a", "3.5"};
    auto a = parse(run(args).out);
    auto b = parse(run(args).out);
    a.erase("manifest");
    b.erase("manifest");
    EXPECT_EQ(a.dump(), b.dump());
}

TEST(CliSpectrum, UsageAndIoErrors) {
    EXPECT_EQ(run({"spectrum", "--parity", "even", "--n", "0", "--a", "1"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--parity", "even", "--n", "2", "--a", "-1"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--parity", "sideways", "--n", "2", "--a", "1"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--n", "2", "--a", "1"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"spectrum", "--parity", "even", "--n", "2", "--a", "1", "--out", "/nonexistent/dir/x.json"}).code, 3);
}

TEST(CliSeedless, BareFlagOnly) {
    EXPECT_EQ(run({"spectrum", "--parity", "odd", "--n", "0", "--a", "1", "--seedless"}).code, 0);
    EXPECT_EQ(run({"spectrum", "--parity", "odd", "--n", "0", "--a", "1", "--seedless=1"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--parity", "odd", "--n", "0", "--a", "1", "--seedless", "yes"}).code, 2);
}

TEST(CliWavefunction, FreeGroundModulus) {
    const auto r = run({"wavefunction", "--parity", "odd", "--n", "0", "--a", "0", "--eta", "1", "--points", "33",
                        "--with-prefactor"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 34u);
    EXPECT_EQ(ls[0], "xi,re,im,abs");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const double modulus = std::stod(ls[i].substr(ls[i].rfind(',') + 1));
        EXPECT_NEAR(modulus, 1.0, 1e-15);
    }
}

TEST(CliWavefunction, FigureTraceAndStrengths) {
    const auto strengths = temp_dir() / "strengths.csv";
    const auto r = run({"wavefunction", "--parity", "even", "--n", "15", "--a", "12", "--eta", "718.0928",
                        "--format", "json", "--strengths-out", strengths.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = parse(r.out);
    EXPECT_EQ(j["trace"].size(), 1024u);
    EXPECT_NEAR(j["trace"].front()["xi"].get<double>(), -2 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(j["trace"].back()["xi"].get<double>(), 2 * std::numbers::pi, 1e-15);
    double total = 0.0;
    for (const auto& s : j["strengths"])
        total += s["strength"].get<double>();
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_EQ(lines(slurp(strengths)).size(), 31u);
}

TEST(CliWavefunction, SelectorMiss) {
    const auto r = run({"wavefunction", "--parity", "even", "--n", "15", "--a", "12", "--eta", "-163.1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("nearest"), std::string::npos);
    EXPECT_NE(r.err.find("-163.706"), std::string::npos);
}

TEST(CliPhysics, Examples) {
    auto r = run({"physics", "--photon-ev", "1.563", "--plasma-ev", "1.0", "--intensity-wcm2", "1e8"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = parse(r.out);
    EXPECT_GE(j["a"].get<double>(), 13.3);
    EXPECT_LE(j["a"].get<double>(), 13.9);
    EXPECT_NEAR(j["mu0"].get<double>(), 6.782e-6, 1e-9);
    EXPECT_TRUE(j.contains("first_principles"));
    EXPECT_TRUE(j.contains("a_discrepancy"));
    r = run({"physics", "--photon-ev", "1.563", "--plasma-ev", "1.0", "--intensity-wcm2", "6e20"});
    EXPECT_NEAR(parse(r.out)["mu0"].get<double>(), 16.61, 0.1);
    r = run({"physics", "--photon-ev", "1.0", "--plasma-ev", "1.5", "--intensity-wcm2", "1e8"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("not-underdense"), std::string::npos);
    r = run({"physics", "--photon-ev", "2", "--plasma-ev", "1", "--density-cm3", "1e20", "--intensity-wcm2", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("ambiguous-input"), std::string::npos);
}

TEST(CliScan, FigureConfiguration) {
    const auto r = run({"scan", "--parity", "even", "--n-min", "15", "--n-max", "15", "--a", "12"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 31u);
    EXPECT_EQ(ls[0], "n,a,k,eta,gap,p_xi_scaled,radicand,evanescent");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::istringstream is(ls[i]);
        std::vector<std::string> f;
        for (std::string c; std::getline(is, c, ',');)
            f.push_back(c);
        const double eta = std::stod(f[3]);
        EXPECT_EQ(f[4], eta < 36.0 ? "true" : "false");
        EXPECT_EQ(f[5].empty(), eta < 36.0);
    }
}

TEST(CliScan, OddGroundAndBookkeeping) {
    auto j = parse(run({"scan", "--parity", "odd", "--n-min", "0", "--n-max", "0", "--a", "1,2,3", "--format", "json"}).out);
    ASSERT_EQ(j["rows"].size(), 3u);
    for (const auto& row : j["rows"])
        EXPECT_NEAR(row["eta"].get<double>(), 1.0, 1e-15);
    j = parse(run({"scan", "--parity", "even", "--n-min", "1", "--n-max", "4", "--a", "0.5,7", "--format", "json"}).out);
    EXPECT_EQ(j["rows"].size(), 2u * (2 + 4 + 6 + 8));
    // order: n, then a, then descending eta
    const auto& rows = j["rows"];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& p = rows[i - 1];
        const auto& c = rows[i];
        if (p["n"] == c["n"] && p["a"] == c["a"]) {
            EXPECT_GT(p["eta"].get<double>(), c["eta"].get<double>());
        } else {
            EXPECT_TRUE(p["n"].get<int>() < c["n"].get<int>() ||
                        (p["n"] == c["n"] && p["a"].get<double>() < c["a"].get<double>()));
        }
    }
    EXPECT_EQ(run({"scan", "--parity", "even", "--n-min", "3", "--n-max", "2", "--a", "1"}).code, 2);
}

TEST(CliVerify, Passes) {
    auto r = run({"verify", "--parity", "even", "--n", "15", "--a", "12", "--tier", "extended"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(parse(r.out)["pass"].get<bool>());
    r = run({"verify", "--parity", "odd", "--n", "0", "--a", "7"});
    EXPECT_EQ(r.code, 0);
    for (const auto& c : parse(r.out)["checks"])
        if (c["name"] == "ode_residual") {
            EXPECT_EQ(c["value"].get<double>(), 0.0);
        }
}

TEST(CliVerify, CorruptedEigenvalueFails) {
    const auto r = run({"verify", "--parity", "even", "--n", "3", "--a", "1", "--corrupt-eigenvalue", "0.01"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("ode_residual"), std::string::npos);
    const auto j = parse(r.out);
    EXPECT_FALSE(j["pass"].get<bool>());
}
