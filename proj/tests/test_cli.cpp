#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ksp/cli.hpp"

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("ksp");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code =
        ksp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/ksp_cli_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("phi prints twelve decimals and json round-trips") {
    auto r = run({"phi", "0.70"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 14) == "0.288764804970");

    auto rj = run({"--json", "phi", "0.70"});
    CHECK(rj.code == 0);
    auto j = nlohmann::json::parse(rj.out);
    CHECK(j["x"].get<double>() == doctest::Approx(0.70));
    CHECK(j["phi"].get<double>() == doctest::Approx(0.2887648049703108));
    CHECK(j.contains("tool_version"));

    auto rq = run({"phi", "--quantile", "0.5"});
    CHECK(rq.code == 0);
    CHECK(std::stod(rq.out) == doctest::Approx(0.8275735551899077).epsilon(1e-7));

    CHECK(run({"phi", "--quantile", "1.5"}).code == 1);
}

TEST_CASE("lambda subcommand reads sequence files") {
    const auto path = write_temp("geo.txt",
                                 "# the mod-100 geometric sequence\n"
                                 "3\n9\n27\n81\n43\n29\n87\n61\n83\n49\n47\n41\n23\n69\n7\n");
    auto r = run({"--json", "lambda", "--input", path, "--cdf", "uniform:0:100"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["lambda"].get<double>() == doctest::Approx(0.6842270578299771));
    CHECK(j["n"] == 15);

    auto rd = run({"--json", "lambda", "--input", path, "--cdf", "discrete:100"});
    CHECK(rd.code == 0);

    auto missing = run({"lambda", "--input", "/tmp/ksp_cli_missing_file.txt"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot open") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("discrepancy and weyl subcommands") {
    const auto path = write_temp("unit.txt", "0.05\n0.15\n0.25\n0.35\n0.45\n0.55\n0.65\n0.75\n0.85\n0.95\n");
    auto r = run({"--json", "discrepancy", "--input", path});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["star_discrepancy"].get<double>() == doctest::Approx(0.05));

    auto w = run({"--json", "weyl", "--input", path, "--h", "10"});
    CHECK(w.code == 0);
    auto jw = nlohmann::json::parse(w.out);
    CHECK(jw["weyl_sum"].get<double>() == doctest::Approx(1.0));  // h = grid frequency

    CHECK(run({"weyl", "--input", path, "--h", "0"}).code == 1);
    std::remove(path.c_str());
}

TEST_CASE("generate emits values with reproducibility metadata") {
    auto r = run({"generate", "geometric", "--a", "3", "--A", "1", "--mod", "100",
                  "--n", "15"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# ksp 0.1.0") == 0);
    CHECK(r.out.find("kind=geometric") != std::string::npos);

    auto rj = run({"--json", "generate", "arithmetic", "--k", "37", "--mod", "100",
                   "--n", "15"});
    auto j = nlohmann::json::parse(rj.out);
    CHECK(j["values"].size() == 15);

    // iid runs record the seed and generator so files reproduce themselves
    auto seeded = run({"--seed", "42", "generate", "iid", "--n", "5"});
    CHECK(seeded.code == 0);
    CHECK(seeded.out.find("seed=42") != std::string::npos);
    CHECK(seeded.out.find("generator=") != std::string::npos);
    auto again = run({"--seed", "42", "generate", "iid", "--n", "5"});
    CHECK(seeded.out == again.out);

    auto lac = run({"--json", "generate", "lacunary", "--a", "e", "--A", "1", "--n", "4"});
    CHECK(lac.code == 0);
    auto jl = nlohmann::json::parse(lac.out);
    CHECK(jl["values"][0].get<double>() < 1.0);
}

TEST_CASE("generate surfaces resource limits as exit 2") {
    auto r = run({"generate", "lacunary", "--a", "e", "--A", "1", "--n", "1000000"});
    CHECK(r.code == 2);
    CHECK(r.err.find("resource limit") != std::string::npos);
}

TEST_CASE("precision ceiling honors the environment override") {
    setenv("KSP_PRECISION_CEILING_BITS", "100", 1);
    auto r = run({"generate", "lacunary", "--a", "e", "--A", "1", "--n", "200"});
    CHECK(r.code == 2);
    setenv("KSP_PRECISION_CEILING_BITS", "junk", 1);
    CHECK(run({"generate", "lacunary", "--a", "e", "--A", "1", "--n", "4"}).code == 1);
    unsetenv("KSP_PRECISION_CEILING_BITS");
    CHECK(run({"generate", "lacunary", "--a", "e", "--A", "1", "--n", "200"}).code == 0);
}

TEST_CASE("contfrac subcommands") {
    auto r = run({"contfrac", "expand", "--k", "37/100", "--terms", "20"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[0; 2, 1, 2, 2, 1, 3] (terminated)") != std::string::npos);

    auto rj = run({"--json", "contfrac", "expand", "--k", "sqrt2", "--terms", "6"});
    auto j = nlohmann::json::parse(rj.out);
    CHECK(j["a0"] == "1");
    CHECK(j["quotients"].size() == 6);
    for (const auto& q : j["quotients"]) CHECK(q == "2");
    CHECK(j["convergents"].back()[0].is_string());
    CHECK(j["truncated"] == false);

    auto b = run({"--json", "contfrac", "bound", "--k", "phi", "--n", "1000"});
    CHECK(b.code == 0);
    CHECK(nlohmann::json::parse(b.out)["bound_on_n_discrepancy"].get<double>() > 0.0);

    auto rate = run({"--json", "contfrac", "rate", "--k", "phi", "--epsilon", "0.1",
                     "--grid", "16,100,1000"});
    CHECK(rate.code == 0);
    CHECK(nlohmann::json::parse(rate.out)["r_values"].size() == 3);
}

TEST_CASE("simulate covariance prints the three forms") {
    auto r = run({"simulate", "covariance", "--coeffs", "1,-1", "--thresholds",
                  "0.25,0.75"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["closed_form"].get<double>() == doctest::Approx(0.25));
    CHECK(j["integral_form"].get<double>() == doctest::Approx(0.25));
    CHECK(j["bridge_form"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("simulate bridge-max writes sorted estimates when asked") {
    auto r = run({"--seed", "5", "--workers", "2", "--out", "/tmp/ksp_cli_bridge",
                  "simulate", "bridge-max", "--N", "4", "--trials", "200"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["seed"] == 5);
    CHECK(j.contains("ks_to_kolmogorov"));
    std::ifstream csv("/tmp/ksp_cli_bridge.csv");
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "value");
    double prev = -1.0, v = 0.0;
    int rows = 0;
    while (csv >> v) {
        CHECK(v >= prev);
        prev = v;
        ++rows;
    }
    CHECK(rows == 200);
    std::remove("/tmp/ksp_cli_bridge.csv");
    std::remove("/tmp/ksp_cli_bridge.json");
}

TEST_CASE("experiment subcommands and exit codes") {
    auto r = run({"--json", "experiment", "arnold", "--out", "/tmp/ksp_cli_arnold"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"].get<bool>());
    std::ifstream persisted("/tmp/ksp_cli_arnold.json");
    REQUIRE(persisted.good());
    nlohmann::json jp;
    persisted >> jp;
    CHECK(jp["summary"]["schema_version"] == 1);
    CHECK(jp["summary"]["generator"] == "xoshiro256++/splitmix64");
    std::remove("/tmp/ksp_cli_arnold.json");
    std::remove("/tmp/ksp_cli_arnold.csv");

    // a failing assertion-style experiment exits 3: unreachable threshold
    auto fail = run({"experiment", "theorem1", "--n", "16", "--num-A", "50",
                     "--threshold", "0.0000001"});
    CHECK(fail.code == 3);

    // LIL runs never carry pass/fail
    auto lil = run({"experiment", "lil", "--source", "iid", "--checkpoints",
                    "100,1000"});
    CHECK(lil.code == 0);
    CHECK_FALSE(nlohmann::json::parse(lil.out).contains("passed"));

    auto decay = run({"experiment", "decay", "--k", "37/100"});
    CHECK(decay.code == 0);
}

TEST_CASE("unknown flags and subcommands are rejected") {
    CHECK(run({"phi", "0.7", "--bogus"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_SUITE_END();
