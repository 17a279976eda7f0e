#include "affcurv/exterior.hpp"

#include "affcurv/error.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace affcurv {

namespace {

double sign_at(int m, int i) {  // (-1)^(m-i) for the 1-based index i
    return ((m - i) % 2 == 0) ? 1.0 : -1.0;
}

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw InputError(msg.str());
    }
}

}  // namespace

AffineSpace::AffineSpace(int dim) : AffineSpace(dim, Mat::Identity(dim, dim)) {}

AffineSpace::AffineSpace(int dim, Mat volume_basis) : dim_(dim), volume_basis_(std::move(volume_basis)) {
    if (dim < 1 || volume_basis_.rows() != dim || volume_basis_.cols() != dim) {
        throw InputError("AffineSpace: volume basis must be dim x dim");
    }
    if (std::abs(volume_basis_.determinant() - 1.0) > 1e-12) {
        throw InputError("AffineSpace: volume basis must have determinant 1");
    }
}

double AffineSpace::omega(const Mat& vectors) const {
    require_same_dim(static_cast<int>(vectors.rows()), dim_, "omega");
    require_same_dim(static_cast<int>(vectors.cols()), dim_, "omega");
    return vectors.determinant();
}

MultiCovector operator+(const MultiCovector& a, const MultiCovector& b) {
    require_same_dim(a.dim(), b.dim(), "MultiCovector +");
    return MultiCovector(a.coeffs_ + b.coeffs_);
}

MultiCovector operator-(const MultiCovector& a, const MultiCovector& b) {
    require_same_dim(a.dim(), b.dim(), "MultiCovector -");
    return MultiCovector(a.coeffs_ - b.coeffs_);
}

MultiCovector operator*(double s, const MultiCovector& a) { return MultiCovector(s * a.coeffs_); }

Vec height_covector(const MultiCovector& phi) {
    const int m = phi.dim();
    Vec w(m);
    for (int i = 0; i < m; ++i) w[i] = sign_at(m, i + 1) * phi[i];
    return w;
}

MultiCovector wedge_hyperplane(const Mat& vectors) {
    const int m = static_cast<int>(vectors.rows());
    if (m < 2 || vectors.cols() != m - 1) {
        std::ostringstream msg;
        msg << "wedge_hyperplane: expected " << (m - 1) << " vectors of dimension " << m << ", got "
            << vectors.cols();
        throw InputError(msg.str());
    }
    Vec coeffs(m);
    Mat minor(m - 1, m - 1);
    for (int i = 0; i < m; ++i) {
        for (int r = 0, k = 0; r < m; ++r) {
            if (r == i) continue;
            minor.row(k++) = vectors.row(r);
        }
        coeffs[i] = (m == 2) ? minor(0, 0) : minor.determinant();
    }
    return MultiCovector(std::move(coeffs));
}

MultiCovector wedge_hyperplane(std::span<const Vec> vectors) {
    if (vectors.empty()) throw InputError("wedge_hyperplane: no vectors");
    const int m = static_cast<int>(vectors.front().size());
    Mat cols(m, static_cast<int>(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        require_same_dim(static_cast<int>(vectors[k].size()), m, "wedge_hyperplane");
        cols.col(static_cast<int>(k)) = vectors[k];
    }
    return wedge_hyperplane(cols);
}

double height(const MultiCovector& phi, const Vec& v) {
    const int m = phi.dim();
    require_same_dim(m, static_cast<int>(v.size()), "height");
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += sign_at(m, i + 1) * phi[i] * v[i];
    return s;
}

double omega_prime(const Mat& zeta) {
    const long m = zeta.cols();
    const double sign = ((m * (m - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * zeta.determinant();
}

UnitEllipsoid::UnitEllipsoid(Mat zeta, std::string id) : zeta_(std::move(zeta)), lu_(zeta_), id_(std::move(id)) {}

UnitEllipsoid UnitEllipsoid::standard(int m) {
    if (m < 2) throw InputError("UnitEllipsoid: dimension must be at least 2");
    Mat z = Mat::Identity(m, m);
    if (omega_prime(z) < 0) z(0, 0) = -1.0;
    return UnitEllipsoid(std::move(z), "standard");
}

UnitEllipsoid UnitEllipsoid::sheared(int m, double shear) {
    Mat z = standard(m).zeta();
    z.col(1) += shear * z.col(0);
    std::ostringstream id;
    id << "sheared(" << shear << ")";
    return from_basis(std::move(z), id.str());
}

UnitEllipsoid UnitEllipsoid::from_basis(Mat zeta, std::string id) {
    if (zeta.rows() != zeta.cols() || zeta.rows() < 2) {
        throw InputError("UnitEllipsoid: basis must be a square matrix of size >= 2");
    }
    const double w = omega_prime(zeta);
    if (std::abs(w - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "UnitEllipsoid: omega'(zeta) = " << w << ", expected 1";
        throw InputError(msg.str());
    }
    return UnitEllipsoid(std::move(zeta), std::move(id));
}

Vec UnitEllipsoid::coefficients(const MultiCovector& phi) const {
    require_same_dim(phi.dim(), dim(), "UnitEllipsoid");
    return lu_.solve(phi.coeffs());
}

bool UnitEllipsoid::contains(const MultiCovector& phi, double tol) const {
    return std::abs(coefficients(phi).norm() - 1.0) <= tol;
}

MultiCovector UnitEllipsoid::from_coefficients(const Vec& a) const {
    require_same_dim(static_cast<int>(a.size()), dim(), "UnitEllipsoid");
    return MultiCovector(zeta_ * a);
}

std::vector<MultiCovector> sample_ellipsoid(const UnitEllipsoid& S, std::uint64_t seed, int count) {
    if (count < 1) throw InputError("sample_ellipsoid: count must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<MultiCovector> out;
    out.reserve(count);
    Vec a(S.dim());
    while (static_cast<int>(out.size()) < count) {
        for (int i = 0; i < a.size(); ++i) a[i] = normal(rng);
        const double n = a.norm();
        if (n < 1e-300) continue;
        out.push_back(S.from_coefficients(a / n));
    }
    return out;
}

std::pair<MultiCovector, double> project_to_ellipsoid(const UnitEllipsoid& S, const MultiCovector& phi) {
    const double n = S.coefficients(phi).norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw DegeneracyError("project_to_ellipsoid: phi is zero");
    const double mu = 1.0 / n;
    return {mu * phi, mu};
}

}  // namespace affcurv
