#include "affcurv/cli.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace affcurv;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("affcurv_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("tac on the sphere") {
    const Result r = call({"tac", "--entry", "sphere_centroaffine_n2", "--samples", "500", "--seed", "7"});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["tool"]["name"] == "affcurv");
    CHECK(j["command"] == "tac");
    CHECK(j["seed"] == 7);
    CHECK(j["config"]["samples"] == 500);
    CHECK(j["result"]["tau_estimate"] == 2.0);
    CHECK(j["rejections"]["non_morse"] == 0);
    CHECK(j.contains("timing"));
}

TEST_CASE("theorem on the torus agrees") {
    const Result r = call({"theorem", "--entry", "torus_revolution", "--samples", "100"});
    CHECK(r.code == 0);
    CHECK(r.json()["result"]["agreement"] == true);
    CHECK(r.json()["result"]["minimal"] == false);
}

TEST_CASE("a forced disagreement exits with 2") {
    // a rank tolerance this coarse misreads the sphere's hull as a plane
    const Result r = call({"theorem", "--entry", "sphere_centroaffine_n2", "--samples", "20", "--rank-tol", "0.99"});
    CHECK(r.code == 2);
    CHECK(r.json()["result"]["agreement"] == false);
}

TEST_CASE("kossowski") {
    const Result r = call({"kossowski", "--grid", "201", "--no-timing"});
    REQUIRE(r.code == 0);
    const Json res = r.json()["result"];
    CHECK(res["beta_positive"] == true);
    CHECK(std::abs(res["lambda_at_0"].get<double>()) < 1e-8);
    CHECK(std::abs(res["dlambda_at_0"].get<double>()) > 1e-3);
    CHECK_FALSE(r.json().contains("timing"));
}

TEST_CASE("list") {
    const Result r = call({"list"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"].size() == 6);
    CHECK(r.json()["rejections"].is_null());
}

TEST_CASE("reports are byte-identical across execution modes") {
    const std::vector<std::string> base{"tac", "--entry", "dumbbell", "--samples", "40", "--no-timing"};
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return call(a).out;
    };
    const std::string serial = with({"--serial"});
    CHECK(serial == with({"--threads", "2"}));
    CHECK(serial == with({}));
}

TEST_CASE("csv output and plot data") {
    const Result r = call({"tac", "--entry", "torus_revolution", "--samples", "25", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "count,frequency\n4,25\n");

    const std::string plot = temp_path("plot.csv");
    CHECK(call({"certify-minimal", "--entry", "torus_revolution", "--samples", "10", "--plot", plot}).code == 0);
    CHECK(slurp(plot) == "count,frequency\n4,10\n");

    const std::string scan = temp_path("scan.csv");
    const Result g = call({"gauss-scan", "--grid", "9", "--plot", scan});
    CHECK(g.code == 0);
    const std::string csv = slurp(scan);
    CHECK(csv.rfind("u,v,G,sigma_min\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 82);
    CHECK(g.json()["result"]["rows"].size() == 81);

    const std::string empty = temp_path("empty.csv");
    emit_plot_data(Json::object(), empty);
    CHECK(slurp(empty) == "count,frequency\n");
    CHECK_THROWS_AS(emit_plot_data(Json::object(), "/nonexistent/dir/x.csv"), InputError);
}

TEST_CASE("diagnostics, output file and config file") {
    const std::string diag = temp_path("diag.jsonl"), out = temp_path("out.json"), cfg = temp_path("run.ini");
    {
        std::ofstream f(cfg);
        f << "entry = sphere_centroaffine_n2\nsamples = 12\nseed = 5\n";
    }
    const Result r = call({"tac", "--config", cfg, "--diagnostics", diag, "--out", out});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const Json j = Json::parse(slurp(out));
    CHECK(j["config"]["samples"] == 12);
    CHECK(j["seed"] == 5);
    std::istringstream lines(slurp(diag));
    int n = 0;
    for (std::string line; std::getline(lines, line); ++n) CHECK(Json::parse(line).contains("zeta_coefficients"));
    CHECK(n == j["result"]["draws"].get<int>());
}

TEST_CASE("convexity and reduce commands") {
    const Result c = call({"convexity", "--entry", "sphere_in_R4", "--sample-resolution", "16"});
    REQUIRE(c.code == 0);
    CHECK(c.json()["result"]["reductions"] == 1);
    CHECK(c.json()["result"]["convex"] == true);
    const Result d = call({"convexity", "--entry", "dumbbell", "--sample-resolution", "16"});
    CHECK(d.json()["result"]["convex"] == false);

    const Result r = call({"reduce", "--entry", "sphere_in_R4"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["result"]["m"] == 3);
    CHECK(call({"reduce", "--entry", "torus_revolution"}).code == 1);
}

TEST_CASE("manifest input") {
    const Result r = call({"tac", "--manifest", AFFCURV_TEST_DATA "/torus.manifest", "--samples", "10"});
    CHECK(r.code == 0);
    CHECK(r.json()["result"]["tau_estimate"] == 4.0);
}

TEST_CASE("error exit codes") {
    CHECK(call({"tac", "--entry", "nope"}).code == 1);
    CHECK(call({"tac"}).code == 1);
    CHECK(call({"tac", "--entry", "dumbbell", "--format", "xml"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({}).code == 1);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"tac", "--entry", "dumbbell", "--manifest", "x"}).code == 1);
    CHECK(call({"kossowski", "--format", "csv"}).code == 1);
    CHECK(call({"tac", "--entry", "dumbbell", "--samples", "5", "--plot", "/nonexistent/dir/p.csv"}).code == 1);
    CHECK(call({"tac", "--entry", "sphere_centroaffine_n2", "--samples", "5", "--frame", "alternative"}).code == 0);
    CHECK(call({"tac", "--entry", "torus_revolution", "--frame", "alternative"}).code == 1);
    const Result p = call({"tac", "--entry", "sphere_centroaffine_n2", "--samples", "10", "--morse-tol", "1e6"});
    CHECK(p.code == 3);
    CHECK(p.err.find("rejection") != std::string::npos);
    CHECK(exit_code(ErrorKind::domain) == 1);
    CHECK(exit_code(ErrorKind::verdict) == 2);
    CHECK(exit_code(ErrorKind::degenerate) == 3);
}
