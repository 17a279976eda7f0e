#include "affcurv/catalog.hpp"
#include "affcurv/error.hpp"
#include "affcurv/exterior.hpp"

#include <doctest.h>

#include <cmath>

using namespace affcurv;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

// Orientation times the cofactor normal of the chart.
Vec oriented_normal(const Chart& c, const Vec& u) {
    const ImmersionJet j = c.eval_jet(u);
    return c.orientation() * height_covector(wedge_hyperplane(j.d1));
}

}  // namespace

TEST_CASE("catalog listing") {
    const auto names = catalog_names();
    CHECK(names.size() == 6);
    for (const auto& n : names) CHECK(catalog_entry(n).name == n);
    CHECK_THROWS_AS(catalog_entry("klein_bottle"), InputError);
    CHECK(*catalog_entry("torus_revolution").known.tau == 4.0);
    CHECK(catalog_entry("torus_revolution").known.betti == std::vector<int>{1, 2, 1});
    CHECK(*catalog_entry("sphere_in_R4").known.hull_dim == 3);
}

TEST_CASE("chart orientations agree with the outward normal") {
    for (const char* name : {"sphere_centroaffine_n2", "sphere_centroaffine_n3", "sigma_kossowski", "dumbbell",
                             "torus_revolution"}) {
        CAPTURE(name);
        const CatalogEntry e = catalog_entry(name);
        for (const ParamSample& s : sample_parameters(e.atlas, e.atlas.param_dim() == 3 ? 6 : 12)) {
            const Chart& c = e.atlas.chart(s.chart);
            const Vec x = c.eval_point(s.u);
            Vec radial = x;
            if (std::string(name) == "torus_revolution") {
                const double r = std::hypot(x[0], x[1]);
                radial[0] -= 2.0 * x[0] / r;
                radial[1] -= 2.0 * x[1] / r;
            }
            CHECK(oriented_normal(c, s.u).dot(radial) > 0.0);
        }
    }
}

TEST_CASE("Sigma closed forms") {
    CHECK(sigma::E(0.0) == -1.0);
    CHECK(sigma::F(0.0) == 1.0);
    CHECK(sigma::u_max == doctest::Approx(std::pow(0.5, 0.25)));
    // the seam u = u_max is where E vanishes
    CHECK(std::abs(sigma::E(sigma::u_max)) < 1e-15);
    for (double u : {-0.6, -0.1, 0.0, 0.3, 0.8}) {
        const Vec xi = sigma::xi(u, 0.4);
        CHECK(xi.norm() == doctest::Approx(1.0));
        CHECK(sigma::delta(u) == doctest::Approx(std::hypot(sigma::dE(u), sigma::dF(u))));
        CHECK(sigma::beta(u) > 0.0);
    }
    const CatalogEntry e = catalog_entry("sigma_kossowski");
    const Chart& fp = e.atlas.chart(e.atlas.chart_index("f_plus"));
    const Vec u = vec2(0.2, 0.4);
    const FrameValues fv = e.frame.eval(fp, u, fp.eval_jet(u));
    CHECK((fv.xi.col(0) - sigma::xi(0.2, 0.4)).norm() < 1e-14);
    CHECK((fp.eval_point(vec2(0, 0)) - Vec::Unit(3, 2) + Vec::Unit(3, 0)).norm() < 1e-15);
}

TEST_CASE("det alpha on Sigma against a symbolic oracle") {
    // Cramer-rule expansion of alpha for f_+ and the stated xi, evaluated
    // symbolically outside this code base at v = 0.3.
    const CatalogEntry e = catalog_entry("sigma_kossowski");
    CHECK(sigma_det_alpha(e, 0.3) == doctest::Approx(0.18582310345395775).epsilon(1e-10));
    CHECK(sigma_det_alpha(e, -0.5) == doctest::Approx(1.385705812984664).epsilon(1e-10));
    CHECK(sigma_det_alpha(e, 0.7) == doctest::Approx(0.27285687335321906).epsilon(1e-10));
    CHECK(std::abs(sigma_det_alpha(e, 0.0)) < 1e-14);
    // The closed form beta carries an extra factor E^2: det alpha = u^2 beta / E^2.
    for (double u : {-0.7, -0.2, 0.1, 0.6}) {
        const double E = sigma::E(u);
        CHECK(sigma_det_alpha(e, u) == doctest::Approx(u * u * sigma::beta(u) / (E * E)).epsilon(1e-10));
    }
}

TEST_CASE("Kossowski conditions") {
    const CatalogEntry e = catalog_entry("sigma_kossowski");
    const KossowskiReport r = kossowski_check(e, 401);
    CHECK(r.beta_positive);
    CHECK(r.beta_min > 0.0);
    CHECK(std::abs(r.lambda_at_0) < 1e-8);
    CHECK(std::abs(r.dlambda_at_0) > 1e-3);
    CHECK(r.dlambda_at_0 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
    CHECK(r.dlambda_closed_form == doctest::Approx(std::sqrt(3.0)));
    CHECK(r.det_alpha_e2_max_rel_error < 1e-8);
    CHECK(r.grid == 401);
    CHECK_THROWS_AS(kossowski_check(e, 400), InputError);
}
