#include "affcurv/catalog.hpp"
#include "affcurv/kernels.hpp"

#include <doctest.h>

using namespace affcurv;

namespace {

bool same(const MorseCount& a, const MorseCount& b) {
    if (a.count() != b.count() || a.morse != b.morse || a.seeds != b.seeds || a.converged != b.converged ||
        a.diverged != b.diverged)
        return false;
    for (int i = 0; i < a.count(); ++i) {
        const auto &x = a.records[i], &y = b.records[i];
        if (x.chart != y.chart || x.u != y.u || x.point != y.point || x.height != y.height || x.index != y.index)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("critical point sweep: OpenMP matches the serial reference exactly") {
    const CatalogEntry e = catalog_entry("dumbbell");
    const CriticalPointFinder finder(e.atlas);
    const auto phis = sample_ellipsoid(UnitEllipsoid::standard(3), 5, 40);
    const auto ref = critical_point_sweep_serial(finder, phis);
    for (int threads : {1, 2, 4}) {
        set_threads(threads);
        const auto par = critical_point_sweep_omp(finder, phis);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(same(ref[i], par[i]));
    }
    CHECK(critical_point_sweep(finder, phis, Execution::serial).size() == phis.size());
}

TEST_CASE("support sweep: OpenMP matches the serial reference exactly") {
    const CatalogEntry e = catalog_entry("torus_revolution");
    const std::vector<Vec> pts = sample_points(e.atlas, 24);
    std::vector<Vec> cov;
    for (std::size_t i = 0; i < pts.size(); ++i) cov.push_back(pts[(i * 7) % pts.size()]);
    const auto ref = support_sweep_serial(pts, cov);
    for (int threads : {1, 3}) {
        set_threads(threads);
        const auto par = support_sweep_omp(pts, cov);
        REQUIRE(par.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(par[i].min_s == ref[i].min_s);
            CHECK(par[i].max_s == ref[i].max_s);
        }
    }
    // brute-force check of one entry
    double lo = 0.0, hi = 0.0;
    for (const Vec& x : pts) {
        const double s = cov[5].dot(x - pts[5]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(ref[5].min_s == doctest::Approx(lo));
    CHECK(ref[5].max_s == doctest::Approx(hi));
    CHECK(max_threads() >= 1);
}
