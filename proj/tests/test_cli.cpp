#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hv2q/cli.hpp"

using namespace hv2q;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const std::string kSpinZ = R"({"alpha1":0,"alpha2":1,"axis":[0,0,1]})";
const std::string kProductState =
    R"({"amplitudes":[[1,0],[0,0],[0,0],[0,0]]})";

}  // namespace

TEST_CASE("verify on the singlet with aligned spin observables") {
    const CliResult r = run({"verify", "--obs-x", kSpinZ, "--obs-y", kSpinZ, "--model", "general",
                             "--samples", "50000", "--seed", "7"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["model"] == "general");
    CHECK(std::abs(j["xy"]["oracle"].get<double>() - (-1.0)) <= 1e-12);
    CHECK(std::abs(j["xy"]["analytic"].get<double>() - (-1.0)) <= 1e-9);
    CHECK(j["checks"]["pass"] == true);
}

TEST_CASE("verify supports the original singlet model") {
    const CliResult r = run({"verify", "--model", "bell", "--samples", "50000"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["model"] == "bell");
    CHECK(j["checks"]["pass"] == true);
}

TEST_CASE("minimal-model verify reports a zero defect on product states") {
    const CliResult r = run({"verify", "--state", kProductState, "--obs-x", kSpinZ, "--obs-y",
                             kSpinZ, "--model", "minimal", "--samples", "50000"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["locality"]["sup_over_b"].get<double>() <= 1e-10);
    CHECK(j["locality"]["local"] == true);
}

TEST_CASE("truncated JSON input is a usage error") {
    const CliResult r = run({"verify", "--state", R"({"amplitudes": [[1,0],)"});
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed") != std::string::npos);
}

TEST_CASE("unknown flags are usage errors") {
    CHECK(run({"verify", "--frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("an unreachable input file is a usage error") {
    CHECK(run({"verify", "--state", "/nonexistent/state.json"}).code == 2);
}

TEST_CASE("an impossible analytic tolerance fails verification with exit 1") {
    const CliResult r = run({"verify", "--samples", "0", "--analytic-tol", "1e-18"});
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    CHECK(j["checks"]["pass"] == false);
}

TEST_CASE("reports are byte-identical for identical inputs") {
    const std::vector<std::string> args{"verify", "--samples", "20000", "--seed", "11"};
    const CliResult a = run(args);
    const CliResult b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const CliResult c = run({"verify", "--samples", "20000", "--seed", "12"});
    CHECK(c.out != a.out);
}

TEST_CASE("theta sweep reproduces the negative cosine curve") {
    const CliResult r = run({"sweep", "--param", "theta", "--range", "0:3.141592653589793:9",
                             "--samples", "20000", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "parameter,oracle_xy,model_xy,mc_xy,mc_stderr,defect,sup_defect");
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        double theta = 0, oracle = 0, model = 0;
        std::sscanf(line.c_str(), "%lf,%lf,%lf", &theta, &oracle, &model);
        CHECK(std::abs(oracle - (-std::cos(theta))) <= 1e-9);
        CHECK(std::abs(model - oracle) <= 1e-8);
        ++rows;
    }
    CHECK(rows == 9);
}

TEST_CASE("phi sweep drives the locality defect to zero") {
    const CliResult r = run({"sweep", "--param", "phi", "--range", "0:0.7853981633974483:5",
                             "--samples", "0", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    const auto& rows = j["rows"];
    REQUIRE(rows.size() == 5);
    double prev = 2.0;
    for (const auto& row : rows) {
        const double sup = row["sup_defect"].get<double>();
        CHECK(sup < prev);
        prev = sup;
    }
    CHECK(rows.back()["sup_defect"].get<double>() <= 1e-10);
}

TEST_CASE("an empty sweep range is a usage error") {
    CHECK(run({"sweep", "--param", "theta", "--range", ""}).code == 2);
    CHECK(run({"sweep", "--param", "theta", "--range", "0:1:0"}).code == 2);
}

TEST_CASE("evolve with a trivial Hamiltonian repeats one record") {
    const std::string zero_h =
        R"([[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]])";
    const CliResult r = run({"evolve", "--hamiltonian", zero_h, "--t-max", "2", "--steps", "3",
                             "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2, row3;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    std::getline(lines, row3);
    CHECK(row1.substr(row1.find(',')) == row2.substr(row2.find(',')));
    CHECK(row2.substr(row2.find(',')) == row3.substr(row3.find(',')));
}

TEST_CASE("evolve rejects a non-Hermitian Hamiltonian") {
    const std::string bad =
        R"([[[0,0],[1,1],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]])";
    CHECK(run({"evolve", "--hamiltonian", bad}).code == 2);
}

TEST_CASE("contextuality demos emit their reports") {
    const CliResult peres = run({"contextuality", "--demo", "peres", "--samples", "500"});
    CHECK(peres.code == 0);
    const json j = json::parse(peres.out);
    CHECK(j["row_signs"] == json::array({1, 1, 1}));
    CHECK(j["col_signs"] == json::array({1, 1, -1}));
    CHECK(j["consistent_assignments"] == 0);
    CHECK(j["model_on_singlet"]["any_violation_fraction"].get<double>() == 1.0);

    const std::string obs_a = R"({"alpha1":0,"alpha2":1,"axis":[0.8660254037844387,0,0.5]})";
    const CliResult pr = run({"contextuality", "--demo", "product-rule", "--obs-x", obs_a,
                              "--obs-y", kSpinZ, "--samples", "100000"});
    CHECK(pr.code == 0);
    const json p = json::parse(pr.out);
    CHECK(std::abs(p["single_context_lab_axis"]["angle_over_pi"].get<double>() - 1.0 / 12.0) <=
          1e-9);
}

TEST_CASE("reports can be written to a file") {
    const std::string path = "cli_report_tmp.json";
    const CliResult r = run({"verify", "--samples", "0", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    CHECK(j["schema"] == 1);
    in.close();
    std::remove(path.c_str());
}
