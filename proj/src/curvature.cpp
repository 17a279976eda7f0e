#include "affcurv/curvature.hpp"

#include "affcurv/error.hpp"

#include <cmath>

namespace affcurv {

GaussValue gauss_map(const ImmersionJet& jet, const FundamentalData& fd, const Mat& fiber, const UnitEllipsoid& S,
                     int orientation) {
    const int n = jet.n(), m = jet.m();
    if (fiber.rows() != m || fiber.cols() != m - n - 1) {
        throw InputError("gauss_map: fiber must hold r - 1 vectors");
    }
    unimodular_rescale(fd);  // throws when theta vanishes

    Mat cols(m, m - 1);
    cols.leftCols(n) = jet.d1;
    cols.rightCols(m - 1 - n) = fiber;
    cols.col(0) /= fd.theta_value;
    const MultiCovector raw = wedge_hyperplane(cols);
    if (raw.coeff_norm() <= 1e-14 * std::pow(jet.d1.norm() + fiber.norm(), m - 1)) {
        throw DegeneracyError("gauss_map: tangent wedge vanishes");
    }
    const int s = orientation >= 0 ? 1 : -1;
    auto [phi, mu] = project_to_ellipsoid(S, raw);
    return {static_cast<double>(s) * phi, mu, s};
}

GaussValue gauss_map(const ImmersionJet& jet, const FundamentalData& fd, const UnitEllipsoid& S, int orientation) {
    return gauss_map(jet, fd, Mat(jet.m(), jet.m() - jet.n() - 1), S, orientation);
}

Mat height_alpha_matrix(const FundamentalData& fd, const MultiCovector& phi) {
    const int n = fd.n;
    const Vec w = height_covector(phi);
    Mat H(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) H(i, j) = H(j, i) = w.dot(fd.alpha_vectors.col(sym_index(i, j, n)));
    }
    return H;
}

double lipschitz_killing(const FundamentalData& fd, const GaussValue& g) {
    const double sign = fd.n % 2 == 0 ? 1.0 : -1.0;
    return sign * height_alpha_matrix(fd, g.phi).determinant() / unimodular_rescale(fd);
}

GaussJacobian gauss_jacobian_rank(const Chart& chart, const Vec& u, const TransversalFrame& frame,
                                  const UnitEllipsoid& S, double step) {
    if (!(step > 1e-12)) throw InputError("gauss_jacobian_rank: step underflow");
    const int n = chart.param_dim(), m = chart.ambient_dim();
    if (m != n + 1) throw InputError("gauss_jacobian_rank: codimension one only");

    auto coeffs_at = [&](const Vec& p) {
        const ImmersionJet jet = chart.eval_jet_unchecked(p);
        const FundamentalData fd = decompose(jet, frame.eval(chart, p, jet));
        return S.coefficients(gauss_map(jet, fd, S).phi);
    };

    const ImmersionJet jet = chart.eval_jet(u);
    const Vec a = coeffs_at(u);
    Mat J(m, n);
    for (int k = 0; k < n; ++k) {
        Vec up = u, dn = u;
        up[k] += step;
        dn[k] -= step;
        J.col(k) = (coeffs_at(up) - coeffs_at(dn)) / (2.0 * step);
    }
    J -= a * (a.transpose() * J);  // tangent part on the coefficient sphere

    // d1 = Q R with Q orthonormal; J R^{-1} is dnu against an orthonormal tangent basis.
    Eigen::HouseholderQR<Mat> qr(jet.d1);
    const Mat R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    const Mat JR = R.transpose().triangularView<Eigen::Lower>().solve(J.transpose()).transpose();
    Eigen::JacobiSVD<Mat> svd(JR);
    return {svd.singularValues().minCoeff(), svd.singularValues().maxCoeff()};
}

std::vector<GaussScanRow> gauss_scan(const Chart& chart, const TransversalFrame& frame, const UnitEllipsoid& S,
                                     std::span<const Vec> params, double step) {
    std::vector<GaussScanRow> rows;
    rows.reserve(params.size());
    for (const Vec& u : params) {
        const ImmersionJet jet = chart.eval_jet(u);
        const FundamentalData fd = decompose(jet, frame.eval(chart, u, jet));
        GaussScanRow row;
        row.u = u;
        row.G_plus = lipschitz_killing(fd, gauss_map(jet, fd, S, +1));
        row.G_minus = lipschitz_killing(fd, gauss_map(jet, fd, S, -1));
        row.sigma_min = gauss_jacobian_rank(chart, u, frame, S, step).sigma_min;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace affcurv
