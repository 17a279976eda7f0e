#include "affcurv/error.hpp"
#include "affcurv/manifest.hpp"
#include "affcurv/tac.hpp"

#include <doctest.h>

#include <sstream>

using namespace affcurv;

namespace {

CatalogEntry parse(const std::string& text) {
    std::istringstream in(text);
    return parse_manifest(in, "m");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

const std::string kChart = "[chart]\nid = a\nform = torus\nparams = 2 1\ndomain = -pi pi -pi pi\nperiodic = 1 1\n";

}  // namespace

TEST_CASE("torus manifest matches the catalog answer") {
    const CatalogEntry e = load_manifest(AFFCURV_TEST_DATA "/torus.manifest");
    CHECK(e.name == "torus_from_manifest");
    CHECK(e.atlas.euler_characteristic() == 0);
    CHECK(e.atlas.chart(0).orientation() == -1);
    TacConfig c;
    c.sample_count = 50;
    const TacReport r = estimate_tau(e.atlas, e.frame, UnitEllipsoid::standard(3), c);
    CHECK(r.tau_estimate == 4.0);
}

TEST_CASE("finite-difference manifest") {
    const CatalogEntry e = load_manifest(AFFCURV_TEST_DATA "/sphere_fd.manifest");
    CHECK(e.seed_resolution == 48);
    CHECK(e.atlas.charts().size() == 2);
    TacConfig c;
    c.sample_count = 50;
    c.search.seed_resolution = e.seed_resolution;
    const TacReport r = estimate_tau(e.atlas, e.frame, UnitEllipsoid::standard(3), c);
    CHECK(r.tau_estimate == 2.0);
    CHECK(r.equiaffine_max < 1e-4);
}

TEST_CASE("manifest errors carry line numbers") {
    CHECK(error_of("frame = position\n") == "m:1: no [chart] sections");
    CHECK(error_of("frame = position\ncolour = red\n" + kChart) == "m:2: unknown key 'colour'");
    CHECK(error_of("frame = position\n[chart]\nid = a\nform = torus\nparams = 2 x\n").rfind("m:5:", 0) == 0);
    CHECK(error_of("frame = position\n[bogus]\n").rfind("m:2: unknown section", 0) == 0);
    CHECK(error_of("frame = position\nno equals sign\n").rfind("m:2:", 0) == 0);
    CHECK(error_of("frame = position\nframe = position\n").rfind("m:2: duplicate key", 0) == 0);
    CHECK(error_of(kChart).find("missing key 'frame'") != std::string::npos);
    CHECK(error_of("frame = position\n[chart]\nid = a\nform = torus\nparams = 2 1\ndomain = 0 1\n")
              .find("needs lo hi") != std::string::npos);
    CHECK(error_of("frame = position\n[chart]\nid = a\nform = nothing\ndomain = 0 1 0 1\n").rfind("m:4:", 0) == 0);
    CHECK(error_of("frame = position\nbetti = 1 -2 1\n" + kChart).find("Betti") != std::string::npos);
    CHECK(error_of("frame = position\n" + kChart + "orientation = 2\n").find("orientation") != std::string::npos);
    CHECK(error_of("frame = position\n" + kChart + "jet = magic\n").find("jet") != std::string::npos);
    CHECK(error_of("frame = position\n" + kChart + kChart).find("duplicate chart id") != std::string::npos);
    CHECK_THROWS_AS(load_manifest("/nonexistent/file"), InputError);
}
