#pragma once

// Coordinate exterior algebra for the hyperplane multivectors of R^m.
//
// An element of the (m-1)-th exterior power is stored by its coefficients in
// the basis E_i = e_1 ^ ... ^ (e_i omitted) ^ ... ^ e_m. With the sign
// (-1)^(m-i) folded into height(), the height function of phi is a plain
// signed dot product:
//
//     height(phi, v) = sum_i (-1)^(m-i) phi_i v_i = det[v_1 ... v_{m-1} v]
//
// whenever phi = v_1 ^ ... ^ v_{m-1}.

#include "affcurv/linalg.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace affcurv {

// The ambient (R^m, omega). The volume form is realized by volume_basis:
// omega(volume_basis) = 1, so in these coordinates omega is the determinant.
class AffineSpace {
public:
    explicit AffineSpace(int dim);
    AffineSpace(int dim, Mat volume_basis);

    int dim() const { return dim_; }
    const Mat& volume_basis() const { return volume_basis_; }

    // omega(v_1, ..., v_m) for the columns of vectors.
    double omega(const Mat& vectors) const;

private:
    int dim_;
    Mat volume_basis_;
};

class MultiCovector {
public:
    MultiCovector() = default;
    explicit MultiCovector(Vec coeffs) : coeffs_(std::move(coeffs)) {}

    int dim() const { return static_cast<int>(coeffs_.size()); }
    const Vec& coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_[i]; }
    bool is_zero() const { return coeffs_.isZero(0.0); }

    // Euclidean norm of the E-coefficients; only used for tolerance scaling.
    double coeff_norm() const { return coeffs_.norm(); }

    friend MultiCovector operator+(const MultiCovector& a, const MultiCovector& b);
    friend MultiCovector operator-(const MultiCovector& a, const MultiCovector& b);
    friend MultiCovector operator*(double s, const MultiCovector& a);
    friend MultiCovector operator-(const MultiCovector& a) { return -1.0 * a; }

private:
    Vec coeffs_;
};

// The vector w with <w, v> = height(phi, v); the usual cross product for m = 3.
Vec height_covector(const MultiCovector& phi);

// phi = v_1 ^ ... ^ v_{m-1}, given as the m-1 columns of an m x (m-1) matrix.
MultiCovector wedge_hyperplane(const Mat& vectors);
MultiCovector wedge_hyperplane(std::span<const Vec> vectors);

double height(const MultiCovector& phi, const Vec& v);

// The unit ellipsoid S = { Z a : |a| = 1 } for a basis Z (columns zeta_k in
// E-coefficients) normalized so that omega'(zeta_1, ..., zeta_m) = 1.
class UnitEllipsoid {
public:
    // zeta_i = E_i, with zeta_1 negated when needed to make omega' = +1.
    static UnitEllipsoid standard(int m);
    // Standard basis followed by the unimodular shear zeta_2 += shear * zeta_1.
    static UnitEllipsoid sheared(int m, double shear);
    // Throws InputError unless omega'(basis) = 1 within 1e-12.
    static UnitEllipsoid from_basis(Mat zeta, std::string id = "custom");

    int dim() const { return static_cast<int>(zeta_.cols()); }
    const Mat& zeta() const { return zeta_; }
    const std::string& id() const { return id_; }

    // The coefficients a of phi in the zeta-basis.
    Vec coefficients(const MultiCovector& phi) const;
    bool contains(const MultiCovector& phi, double tol = 1e-10) const;
    MultiCovector from_coefficients(const Vec& a) const;

private:
    UnitEllipsoid(Mat zeta, std::string id);

    Mat zeta_;
    Eigen::PartialPivLU<Mat> lu_;
    std::string id_;
};

// omega'(zeta_1, ..., zeta_m) for basis columns given in E-coefficients.
double omega_prime(const Mat& zeta);

// count points drawn uniformly from the coefficient sphere; deterministic in seed.
std::vector<MultiCovector> sample_ellipsoid(const UnitEllipsoid& S, std::uint64_t seed, int count);

// Returns (mu * phi, mu) with mu > 0 and mu * phi on S.
std::pair<MultiCovector, double> project_to_ellipsoid(const UnitEllipsoid& S, const MultiCovector& phi);

}  // namespace affcurv
