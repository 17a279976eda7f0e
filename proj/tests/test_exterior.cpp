#include "affcurv/error.hpp"
#include "affcurv/exterior.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace affcurv;

namespace {

Mat random_int_matrix(std::mt19937& rng, int rows, int cols) {
    std::uniform_int_distribution<int> d(-5, 5);
    Mat a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = d(rng);
    return a;
}

Vec random_vec(std::mt19937& rng, int m) {
    std::normal_distribution<double> d;
    Vec v(m);
    for (int i = 0; i < m; ++i) v[i] = d(rng);
    return v;
}

}  // namespace

TEST_CASE("wedge of standard basis vectors") {
    Mat e12(3, 2);
    e12 << 1, 0, 0, 1, 0, 0;
    CHECK(wedge_hyperplane(e12).coeffs().isApprox(Vec::Unit(3, 2)));
    Mat e23(3, 2);
    e23 << 0, 0, 1, 0, 0, 1;
    const MultiCovector phi = wedge_hyperplane(e23);
    CHECK(phi.coeffs().isApprox(Vec::Unit(3, 0)));
    CHECK(height(phi, Vec::Unit(3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("height of a wedge is the determinant") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 2; ++trial) {
        const Mat V = random_int_matrix(rng, 4, 3);
        const MultiCovector phi = wedge_hyperplane(V);
        for (int k = 0; k < 20; ++k) {
            const Vec v = random_vec(rng, 4);
            Mat full(4, 4);
            full << V, v;
            CHECK(height(phi, v) == doctest::Approx(oracle::permutation_det(full)).epsilon(1e-12));
        }
    }
}

TEST_CASE("height basics") {
    const MultiCovector phi(Vec::Unit(3, 2));
    Vec v(3);
    v << 5, 7, 9;
    CHECK(height(phi, v) == 9.0);
    std::mt19937 rng(3);
    const Mat V = random_int_matrix(rng, 5, 4);
    CHECK(std::abs(height(wedge_hyperplane(V), V.col(0))) < 1e-12);
    CHECK(height_covector(phi).dot(v) == doctest::Approx(height(phi, v)));
}

TEST_CASE("height is bilinear") {
    std::mt19937 rng(5);
    for (int k = 0; k < 50; ++k) {
        const MultiCovector a(random_vec(rng, 4)), b(random_vec(rng, 4));
        const Vec v = random_vec(rng, 4), w = random_vec(rng, 4);
        const double s = 1.7, t = -0.3;
        const double lhs = height(s * a + t * b, v), rhs = s * height(a, v) + t * height(b, v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
        const double lin = height(a, s * v + t * w), ref = s * height(a, v) + t * height(a, w);
        CHECK(std::abs(lin - ref) <= 1e-12 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("wedge is independent of the spanning set up to unimodular change") {
    std::mt19937 rng(8);
    for (int k = 0; k < 20; ++k) {
        const Mat V = Mat::Random(4, 3);
        Mat T = Mat::Random(3, 3);
        T.col(0) /= T.determinant();
        const MultiCovector a = wedge_hyperplane(V), b = wedge_hyperplane(Mat(V * T));
        CHECK((a.coeffs() - b.coeffs()).norm() < 1e-10 * (1.0 + a.coeff_norm()));
    }
}

TEST_CASE("affine space volume") {
    AffineSpace A(3);
    CHECK(A.omega(Mat::Identity(3, 3)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(A.omega(Mat::Identity(2, 2)), InputError);
}

TEST_CASE("ellipsoid sampling") {
    const UnitEllipsoid S = UnitEllipsoid::standard(3);
    CHECK(omega_prime(S.zeta()) == doctest::Approx(1.0));
    const auto a = sample_ellipsoid(S, 42, 3), b = sample_ellipsoid(S, 42, 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(a[i].coeffs() == b[i].coeffs());
        CHECK(S.contains(a[i]));
    }
    const auto many = sample_ellipsoid(S, 7, 100000);
    Vec mean = Vec::Zero(3);
    for (const auto& p : many) mean += S.coefficients(p);
    mean /= many.size();
    CHECK(mean.cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("projection onto the ellipsoid") {
    const UnitEllipsoid S = UnitEllipsoid::standard(4);
    const MultiCovector phi = S.from_coefficients(Vec::Unit(4, 0) * 3.0);
    const auto [p, mu] = project_to_ellipsoid(S, phi);
    CHECK(mu == doctest::Approx(1.0 / 3.0));
    CHECK(S.contains(p));

    const UnitEllipsoid T = UnitEllipsoid::sheared(4, 0.7);
    CHECK(omega_prime(T.zeta()) == doctest::Approx(1.0));
    const auto [q, nu] = project_to_ellipsoid(T, MultiCovector(Vec::Ones(4)));
    CHECK(T.contains(q));
    CHECK(nu > 0);
    CHECK_THROWS_AS(UnitEllipsoid::from_basis(2.0 * Mat::Identity(3, 3)), InputError);
}
