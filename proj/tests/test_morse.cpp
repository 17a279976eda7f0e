#include "affcurv/catalog.hpp"
#include "affcurv/error.hpp"
#include "affcurv/morse.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace affcurv;

namespace {

// The multicovector whose height covector is w.
MultiCovector phi_for(const Vec& w) {
    Vec c(w.size());
    for (int i = 0; i < w.size(); ++i) c[i] = w[i] / height_covector(MultiCovector(Vec::Unit(w.size(), i)))[i];
    return MultiCovector(c);
}

Vec random_unit(std::mt19937& rng, int m) {
    std::normal_distribution<double> d;
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = d(rng);
    return v.normalized();
}

}  // namespace

TEST_CASE("torus: generic heights have min, two saddles, max") {
    const CatalogEntry e = catalog_entry("torus_revolution");
    const CriticalPointFinder finder(e.atlas);
    std::mt19937 rng(4);
    for (int k = 0; k < 5; ++k) {
        const Vec w = random_unit(rng, 3);
        const MultiCovector phi = phi_for(w);
        CHECK((height_covector(phi) - w).norm() < 1e-15);
        const MorseCount mc = finder.find(phi);
        REQUIRE(mc.morse);
        CHECK(mc.count() == 4);
        CHECK(mc.minima() == 1);
        CHECK(mc.maxima() == 1);
        CHECK(mc.index_sum() == 0);
        const oracle::GridCount g = oracle::torus_critical_points(w);
        CHECK(g.total() == mc.count());
        CHECK(g.saddles == 2);
        for (const auto& r : mc.records) {
            CHECK(r.grad_residual < 1e-8);
            CHECK(std::abs(height(phi, r.point) - r.height) < 1e-12);
        }
    }
}

TEST_CASE("torus: the axial height has critical circles") {
    const CatalogEntry e = catalog_entry("torus_revolution");
    const MorseCount mc = find_critical_points(e.atlas, phi_for(Vec::Unit(3, 2)));
    CHECK_FALSE(mc.morse);
}

TEST_CASE("supporting directions") {
    std::mt19937 rng(9);
    const Vec w = random_unit(rng, 3);
    const MultiCovector phi = phi_for(w);

    const CatalogEntry sphere = catalog_entry("sphere_centroaffine_n2");
    const MorseCount ms = find_critical_points(sphere.atlas, phi);
    REQUIRE(ms.count() == 2);
    for (const auto& r : ms.records) CHECK(is_supporting_direction(sphere.atlas, phi, r));

    const CatalogEntry torus = catalog_entry("torus_revolution");
    for (const auto& r : find_critical_points(torus.atlas, phi).records) {
        CHECK(is_supporting_direction(torus.atlas, phi, r) == (r.index != 1));
    }

    // Horizontal heights on the dumbbell: the two neck points are not supporting.
    const CatalogEntry bell = catalog_entry("dumbbell");
    const MultiCovector horizontal = phi_for(Vec::Unit(3, 0));
    const MorseCount mb = find_critical_points(bell.atlas, horizontal);
    int neck = 0;
    for (const auto& r : mb.records) {
        if (std::abs(r.point[2]) < 1e-6) {
            ++neck;
            CHECK_FALSE(is_supporting_direction(bell.atlas, horizontal, r));
        }
    }
    CHECK(neck == 2);  // the saddles x = +-0.4 on the waist circle
}

TEST_CASE("dumbbell counts agree with the profile oracle") {
    const CatalogEntry e = catalog_entry("dumbbell");
    const CriticalPointFinder finder(e.atlas);
    std::mt19937 rng(21);
    for (int k = 0; k < 30; ++k) {
        const Vec w = random_unit(rng, 3);
        const MorseCount mc = finder.find(phi_for(w));
        if (!mc.morse) continue;
        CAPTURE(w.transpose());
        CHECK(mc.count() == oracle::dumbbell_critical_points(w));
        CHECK(mc.index_sum() == 2);
    }
}

TEST_CASE("3-sphere heights") {
    const CatalogEntry e = catalog_entry("sphere_centroaffine_n3");
    SearchConfig cfg;
    cfg.seed_resolution = e.seed_resolution;
    std::mt19937 rng(2);
    for (int k = 0; k < 5; ++k) {
        const MorseCount mc = find_critical_points(e.atlas, MultiCovector(random_unit(rng, 4)), cfg);
        CHECK(mc.morse);
        CHECK(mc.count() == 2);
        CHECK(mc.index_sum() == 0);
    }
}

TEST_CASE("input checks") {
    const CatalogEntry e = catalog_entry("sphere_centroaffine_n2");
    CHECK_THROWS_AS(find_critical_points(e.atlas, MultiCovector(Vec::Zero(3))), InputError);
    CHECK_THROWS_AS(find_critical_points(e.atlas, MultiCovector(Vec::Ones(4))), InputError);
    const std::vector<Vec> pts{Vec::Zero(3), Vec::Ones(3)};
    CHECK(bounding_diameter(pts) == doctest::Approx(std::sqrt(3.0)));
}
