#include "affcurv/catalog.hpp"
#include "affcurv/curvature.hpp"
#include "affcurv/error.hpp"
#include "affcurv/forms.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace affcurv;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

Chart plane_chart() {
    Box b{Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), {false, false}};
    return Chart("p", 3, b, AnalyticSource{plane_form().map});
}

TransversalFrame constant_e3() {
    return TransversalFrame("e3", 1, [](const Chart&, const Vec&, const ImmersionJet&) {
        return FrameValues{Mat(Vec::Unit(3, 2)), 1.0};
    });
}

// The jet of f(u0 + A (u' - u0')) at the same point.
ImmersionJet substitute(const ImmersionJet& j, const Mat& A) {
    const int n = j.n();
    ImmersionJet out{j.point, j.d1 * A, Mat::Zero(j.m(), j.d2.cols())};
    for (int i = 0; i < n; ++i)
        for (int k = i; k < n; ++k)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) out.d2.col(sym_index(i, k, n)) += A(a, i) * A(b, k) * j.second(a, b);
    return out;
}

}  // namespace

TEST_CASE("flat patch: constant Gauss map, G = 0, rank 0") {
    const Chart c = plane_chart();
    const UnitEllipsoid S = UnitEllipsoid::standard(3);
    const TransversalFrame f = constant_e3();
    Vec first;
    for (const Vec& u : {vec2(0, 0), vec2(0.5, -0.3), vec2(-0.7, 0.9)}) {
        const ImmersionJet jet = c.eval_jet(u);
        const FundamentalData fd = decompose(jet, f.eval(c, u, jet));
        const GaussValue g = gauss_map(jet, fd, S);
        if (first.size() == 0) first = g.phi.coeffs();
        CHECK((g.phi.coeffs() - first).norm() < 1e-15);
        CHECK(lipschitz_killing(fd, g) == 0.0);
        CHECK(gauss_jacobian_rank(c, u, f, S).sigma_min < 1e-9);
    }
}

TEST_CASE("Gauss map of the sphere") {
    const CatalogEntry e = catalog_entry("sphere_centroaffine_n2");
    const UnitEllipsoid S = UnitEllipsoid::standard(3);
    const Chart& c = e.atlas.chart(0);
    for (const Vec& u : {vec2(0.4, 0.0), vec2(1.5, 2.0), vec2(2.6, -2.5)}) {
        const ImmersionJet jet = c.eval_jet(u);
        const FundamentalData fd = decompose(jet, e.frame.eval(c, u, jet));
        const GaussValue g = gauss_map(jet, fd, S);
        CHECK(S.contains(g.phi));
        // phi annihilates the tangent plane and is positive on the outward normal
        CHECK(std::abs(height(g.phi, jet.d1.col(0))) < 1e-12);
        CHECK(std::abs(height(g.phi, jet.d1.col(1))) < 1e-12);
        CHECK(height(g.phi, jet.point) == doctest::Approx(1.0));
        CHECK(lipschitz_killing(fd, g) == doctest::Approx(1.0));
        CHECK(lipschitz_killing(fd, gauss_map(jet, fd, S, -1)) == doctest::Approx(1.0));
        const GaussJacobian dj = gauss_jacobian_rank(c, u, e.frame, S);
        CHECK(dj.sigma_min == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK_THROWS_AS(gauss_jacobian_rank(c, vec2(1, 1), e.frame, S, 1e-13), InputError);
}

TEST_CASE("G is invariant under unimodular substitutions") {
    const CatalogEntry e = catalog_entry("torus_revolution");
    const UnitEllipsoid S = UnitEllipsoid::sheared(3, 0.4);
    const Chart& c = e.atlas.chart(0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int k = 0; k < 20; ++k) {
        const Vec u = vec2(d(rng), d(rng));
        Mat A = Mat::Random(2, 2);
        if (std::abs(A.determinant()) < 0.1) A(0, 0) += 1.0;
        A.col(0) /= A.determinant();
        const ImmersionJet jet = c.eval_jet(u), sub = substitute(jet, A);
        const FrameValues xi = e.frame.eval(c, u, jet);
        const FundamentalData fd = decompose(jet, xi), fs = decompose(sub, xi);
        const double g0 = lipschitz_killing(fd, gauss_map(jet, fd, S));
        const double g1 = lipschitz_killing(fs, gauss_map(sub, fs, S));
        CHECK(std::abs(g0 - g1) < 1e-10 * (1.0 + std::abs(g0)));
    }
}

TEST_CASE("Euclidean frame reproduces the sign of Gaussian curvature on the torus") {
    const CatalogEntry e = catalog_entry("torus_revolution");
    const UnitEllipsoid S = UnitEllipsoid::standard(3);
    const Chart& c = e.atlas.chart(0);
    for (double s : {-2.5, -1.0, 0.0, 1.0, 2.0, 3.0}) {
        const Vec u = vec2(s, 0.3);
        const ImmersionJet jet = c.eval_jet(u);
        const FundamentalData fd = decompose(jet, e.frame.eval(c, u, jet));
        const double K = std::cos(s) / (2.0 + std::cos(s));  // R = 2, a = 1
        const double det_alpha = fd.alpha_at(0, 0, 0) * fd.alpha_at(0, 1, 1) - fd.alpha_at(0, 0, 1) * fd.alpha_at(0, 0, 1);
        CHECK((det_alpha > 0) == (K > 0));
        const double G = lipschitz_killing(fd, gauss_map(jet, fd, S));
        CHECK((G > 0) == (K > 0));
    }
}

TEST_CASE("sigma_min vanishes towards the degeneracy locus of Sigma") {
    const CatalogEntry e = catalog_entry("sigma_kossowski");
    const UnitEllipsoid S = UnitEllipsoid::standard(3);
    const Chart& c = e.atlas.chart(0);
    double prev = 1e300;
    for (double u : {0.2, 0.1, 0.05, 0.01}) {
        const double s = gauss_jacobian_rank(c, vec2(u, 0.3), e.frame, S).sigma_min;
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("gauss scan rows") {
    const CatalogEntry e = catalog_entry("sphere_centroaffine_n2");
    const std::vector<Vec> params{vec2(1.0, 0.0), vec2(2.0, 1.0)};
    const auto rows = gauss_scan(e.atlas.chart(0), e.frame, UnitEllipsoid::standard(3), params);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].u == params[1]);
    CHECK(rows[0].G_plus == doctest::Approx(rows[0].G_minus));
    CHECK(rows[0].sigma_min > 0.5);
}
